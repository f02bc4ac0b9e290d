"""Canonical JSON documents (schema "klv-forge/1") and aligned text tables.

All emitted documents are deterministic: keys sorted, no timestamps, lists
in the canonical parameter order.  Half-integer exponents serialize as
integers counting powers of q^(1/2).
"""
from __future__ import annotations

import json

from . import klv
from .params import Block, get_block
from .rootdata import InfChar, canonical_lambda

SCHEMA = "klv-forge/1"


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def lambda_doc(lam: InfChar) -> dict:
    return {
        "n": lam.n,
        "lambda_left": [str(x) for x in lam.left],
        "lambda_right": [str(x) for x in lam.right],
    }


def parse_lambda(data: dict) -> InfChar:
    from fractions import Fraction

    return InfChar(
        tuple(Fraction(x) for x in data["lambda_left"]),
        tuple(Fraction(x) for x in data["lambda_right"]),
    )


def weyl_pair_doc(pair) -> dict:
    return {"perm_left": list(pair.w1), "perm_right": list(pair.w2)}


def params_doc(block: Block) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "params",
        "lambda": lambda_doc(block.lam),
        "integral_positive_roots": [list(r) for r in block.roots.positive],
        "kappa_orbits": [list(k) for k in block.kappas],
        "generators": [
            weyl_pair_doc(block.roots.generator(k)) for k in block.kappas
        ],
        "params": [block.param_record(p) for p in block.params],
    }


def klv_doc(block: Block, twisted: bool) -> dict:
    table = klv.cbasis(block) if twisted else klv.untwisted_table(block)
    entries = {
        f"{k1}|{k2}": poly.to_json()
        for (k1, k2), poly in sorted(table.poly.items())
        if not poly.is_zero()
    }
    return {
        "schema": SCHEMA,
        "kind": "klv-table",
        "twisted": twisted,
        "lambda": lambda_doc(block.lam),
        "order": table.keys,
        "polynomials": entries,
        "text": klv_text_table(table),
    }


def klv_text_table(table) -> str:
    """A plain aligned table for human diffing."""
    keys = table.keys
    width = max(len(k) for k in keys) + 2
    cell = max(
        [len(str(p)) for p in table.poly.values()] + [3]
    ) + 1
    lines = ["".ljust(width) + "".join(k.ljust(cell) for k in keys)]
    for k1 in keys:
        row = k1.ljust(width)
        for k2 in keys:
            row += str(table.p(k1, k2)).ljust(cell)
        lines.append(row.rstrip())
    return "\n".join(lines)


def hecke_doc(block: Block) -> dict:
    from . import hecke

    actions = {}
    for idx, kappa in enumerate(block.kappas):
        rows = {}
        for p in block.fixed:
            image = hecke.t_kappa_apply(block, kappa, hecke.basis_vector(p))
            rows[p.key] = {k: c.to_json() for k, c in sorted(image.items())}
        actions[str(idx)] = {
            "kappa": list(kappa),
            "type_by_param": {
                p.key: block.kappa_type(kappa, p) for p in block.fixed
            },
            "action": rows,
        }
    return {
        "schema": SCHEMA,
        "kind": "hecke-action",
        "lambda": lambda_doc(block.lam),
        "generators": actions,
    }


def packet_doc(result) -> dict:
    doc = result.to_json()
    doc["schema"] = SCHEMA
    doc["kind"] = "packet"
    return doc


def datum_doc(datum) -> dict:
    doc = datum.to_json()
    doc["schema"] = SCHEMA
    doc["kind"] = "translation-datum"
    return doc


def check_doc(suite: str, n: int, violations: list[str]) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "check-report",
        "suite": suite,
        "n": n,
        "ok": not violations,
        "violations": violations,
    }


# rendered-document helpers used by the determinism suite


def render_params_doc(n: int, jobs: int = 1) -> str:
    del jobs  # computation is sequential and deterministic regardless
    return dumps(params_doc(get_block(canonical_lambda(n))))


def render_klv_doc(n: int, twisted: bool) -> str:
    return dumps(klv_doc(get_block(canonical_lambda(n)), twisted))
