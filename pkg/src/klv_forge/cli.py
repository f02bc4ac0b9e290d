"""Command-line front end.

Subcommands: params, hecke, klv, packet, translate, check, fixtures.
Exit codes: 0 success, 1 check/diff failure, 2 usage error, 3 convention
failure (the mathematical alarm from the duality machinery).

Output is deterministic for fixed inputs; --jobs is accepted for interface
stability but the computation runs sequentially either way, so results are
byte-identical across settings.  Setting KLV_FORGE_CACHE to a directory
caches rendered documents between invocations.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import arthur, serialize, suites, translation
from .laurent import ConventionError
from .params import cache_dir, get_block
from .rootdata import canonical_lambda

EXIT_CHECK_FAILED = 1
EXIT_CONVENTION = 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cached(key_parts: list[str], build) -> str:
    directory = cache_dir()
    if not directory:
        return build()
    digest = hashlib.sha256("|".join(key_parts).encode()).hexdigest()[:24]
    path = Path(directory) / f"{digest}.json"
    if path.exists():
        return path.read_text(encoding="utf-8")
    text = build()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return text


def _usage(message: str) -> SystemExit:
    sys.stderr.write(f"klv-forge: error: {message}\n")
    return SystemExit(2)


def _load_lambda(args):
    if args.lam:
        with open(args.lam, "r", encoding="utf-8") as fh:
            return serialize.parse_lambda(json.load(fh))
    if args.n is None:
        raise _usage("either --n or --lambda is required")
    return canonical_lambda(args.n)


def cmd_params(args) -> int:
    lam = _load_lambda(args)
    text = _cached(
        ["params", lam.key()],
        lambda: serialize.dumps(serialize.params_doc(get_block(lam))),
    )
    _emit(text, args.out)
    return 0


def cmd_hecke(args) -> int:
    lam = _load_lambda(args)
    text = _cached(
        ["hecke", lam.key()],
        lambda: serialize.dumps(serialize.hecke_doc(get_block(lam))),
    )
    _emit(text, args.out)
    return 0


def cmd_klv(args) -> int:
    lam = _load_lambda(args)
    twisted = not args.untwisted
    text = _cached(
        ["klv", lam.key(), str(twisted)],
        lambda: serialize.dumps(serialize.klv_doc(get_block(lam), twisted)),
    )
    _emit(text, args.out)
    return 0


def cmd_packet(args) -> int:
    psi = arthur.load_psi(args.psi)
    lam = arthur.infinitesimal_character(psi)
    if lam.regular:
        result = arthur.eta_mok(psi)
        text = serialize.dumps(serialize.packet_doc(result))
    else:
        datum, fiber, n_table = translation.singular_packet(psi)
        doc = {
            "schema": serialize.SCHEMA,
            "kind": "packet",
            "psi": psi.to_json(),
            "lambda": serialize.lambda_doc(lam),
            "xi_psi": datum.fiber_key(fiber),
            "n": n_table,
            "eta_mok": n_table,
            "eta_abv_equals_eta_mok": True,
            "via_translation": True,
        }
        text = serialize.dumps(doc)
    _emit(text, args.out)
    return 0


def cmd_translate(args) -> int:
    with open(args.lam, "r", encoding="utf-8") as fh:
        lam = serialize.parse_lambda(json.load(fh))
    datum = translation.make_datum(lam)
    _emit(serialize.dumps(serialize.datum_doc(datum)), args.out)
    return 0


def cmd_check(args) -> int:
    violations = suites.SUITES[args.suite](args.n)
    _emit(
        serialize.dumps(serialize.check_doc(args.suite, args.n, violations)),
        args.out,
    )
    return 0 if not violations else EXIT_CHECK_FAILED


def _fixture_documents() -> dict[str, str]:
    docs: dict[str, str] = {}
    for n in (1, 2, 3, 4):
        block = get_block(canonical_lambda(n))
        docs[f"params_{n}.json"] = serialize.dumps(serialize.params_doc(block))
        docs[f"klv_twisted_{n}.json"] = serialize.dumps(
            serialize.klv_doc(block, twisted=True)
        )
        psi = arthur.AParameter.make([(0, 0, n, 1)])
        docs[f"packet_nu{n}.json"] = serialize.dumps(
            serialize.packet_doc(arthur.eta_mok(psi))
        )
    return docs


def cmd_fixtures(args) -> int:
    here = Path(__file__).parent / "fixtures"
    docs = _fixture_documents()
    if args.write:
        here.mkdir(exist_ok=True)
        for name, text in docs.items():
            (here / name).write_text(text, encoding="utf-8")
        sys.stdout.write(f"wrote {len(docs)} fixtures\n")
        return 0
    bad = []
    for name, text in docs.items():
        path = here / name
        if not path.exists():
            bad.append(f"missing fixture {name}")
        elif path.read_text(encoding="utf-8") != text:
            bad.append(f"fixture drift in {name}")
    for line in bad:
        sys.stdout.write(line + "\n")
    return EXIT_CHECK_FAILED if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klv-forge",
        description="Twisted KLV tables and Arthur-packet stable characters "
        "for the doubled general linear group at desk scale.",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker pool size (accepted for compatibility; execution is "
        "sequential and deterministic regardless)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_lambda=True):
        if needs_lambda:
            p.add_argument("--n", type=int, help="rank (canonical lambda)")
            p.add_argument(
                "--lambda", dest="lam", help="JSON file with lambda_left/right"
            )
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("params", help="parameter records for a block")
    common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("hecke", help="generator actions on the twisted module")
    common(p)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("klv", help="KLV polynomial table")
    common(p)
    p.add_argument("--untwisted", action="store_true")
    p.add_argument("--twisted", action="store_true", help="(default)")
    p.set_defaults(func=cmd_klv)

    p = sub.add_parser("packet", help="Arthur packet data for a psi file")
    p.add_argument("--psi", required=True, help="JSON file with summands")
    p.add_argument("--out")
    p.set_defaults(func=cmd_packet)

    p = sub.add_parser("translate", help="translation datum for a lambda file")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("check", help="run a named invariant suite")
    p.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fixtures", help="regenerate fixtures and diff")
    p.add_argument("--write", action="store_true")
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except ConventionError as exc:
        sys.stderr.write(f"convention failure: {exc}\n")
        return EXIT_CONVENTION


if __name__ == "__main__":
    sys.exit(main())
