"""Integer lattices of virtual characters and the lattice-level pairing.

A virtual character is an integer combination of basis symbols over one
block: standard or irreducible basis, in plain (untwisted), twisted-atlas
or twisted-whittaker normalization.  The two twisted normalizations of the
same element differ entrywise by (-1)^(l_int - l_int_theta); nothing else
ever enters.

Sheaf-side objects are carried through their combinatorial shadow only: a
dual-side virtual character in the dual-standard basis stands for the
corresponding combination of irreducible constructible sheaves, and the
dual-irreducible basis for perverse sheaves.  Orbit dimensions enter all
signs through the relative offset d_rel, normalized so the generic
parameter has even dimension; this per-block normalization is the single
documented global sign choice.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import klv
from .params import Block, BlockParam

STANDARD = "standard"
IRREDUCIBLE = "irreducible"
DUAL_STANDARD = "dual-standard"        # constructible-sheaf shadow
DUAL_IRREDUCIBLE = "dual-irreducible"  # perverse-sheaf shadow

PLAIN = "plain"
ATLAS = "twisted-atlas"
WHITTAKER = "twisted-whittaker"


@dataclass(frozen=True)
class VirtualCharacter:
    """An integer coefficient vector over block parameters."""

    block_key: str
    basis: str
    normalization: str
    coeffs: tuple[tuple[str, int], ...]

    @classmethod
    def make(cls, block: Block, basis: str, normalization: str,
             coeffs: dict[str, int]) -> "VirtualCharacter":
        if normalization not in (PLAIN, ATLAS, WHITTAKER):
            raise ValueError(f"unknown normalization {normalization}")
        if basis not in (STANDARD, IRREDUCIBLE, DUAL_STANDARD, DUAL_IRREDUCIBLE):
            raise ValueError(f"unknown basis {basis}")
        for key in coeffs:
            p = block.by_key.get(key)
            if p is None:
                raise ValueError(f"unknown parameter {key}")
            if normalization != PLAIN and not p.theta_fixed:
                raise ValueError(
                    "twisted characters live on theta-fixed parameters"
                )
        clean = tuple(sorted((k, v) for k, v in coeffs.items() if v))
        return cls(block.lam.key(), basis, normalization, clean)

    def as_dict(self) -> dict[str, int]:
        return dict(self.coeffs)

    def to_json(self) -> dict:
        return {
            "basis": f"{self.basis}|{self.normalization}",
            "coeffs": {k: v for k, v in self.coeffs},
        }


def _matrix_apply(entries: dict[tuple[str, str], int],
                  coeffs: dict[str, int]) -> dict[str, int]:
    out: dict[str, int] = {}
    for col, c in coeffs.items():
        if not c:
            continue
        for (row, col2), v in entries.items():
            if col2 == col and v:
                out[row] = out.get(row, 0) + v * c
    return {k: v for k, v in out.items() if v}


def _mult_matrix(block: Block, normalization: str) -> dict[tuple[str, str], int]:
    tables = klv.get_tables(block)
    if normalization == PLAIN:
        return tables.mults.m_untwisted
    if normalization == ATLAS:
        return tables.mults.m_theta
    return tables.mults.m_tilde


def _mult_matrix_inverse(block: Block, normalization: str):
    keys = (
        [p.key for p in block.params]
        if normalization == PLAIN
        else [p.key for p in block.fixed]
    )
    entries = _mult_matrix(block, normalization)
    return klv._solve_inverse(
        [[entries.get((r, c), 0) for c in keys] for r in keys], keys
    )


def change_basis(block: Block, v: VirtualCharacter,
                 target: str) -> VirtualCharacter:
    """Convert between the standard and irreducible bases using the
    multiplicity matrix of the character's normalization; round trips are
    the identity."""
    if v.basis == target:
        return v
    if {v.basis, target} == {STANDARD, IRREDUCIBLE}:
        coeffs = v.as_dict()
        if v.basis == STANDARD:
            # M(xi) = sum m(xi', xi) pi(xi')
            out = _matrix_apply(_mult_matrix(block, v.normalization), coeffs)
        else:
            out = _matrix_apply(
                _mult_matrix_inverse(block, v.normalization), coeffs
            )
        return VirtualCharacter.make(block, target, v.normalization, out)
    if {v.basis, target} == {DUAL_STANDARD, DUAL_IRREDUCIBLE}:
        coeffs = v.as_dict()
        if v.basis == DUAL_IRREDUCIBLE:
            # P(xi) = sum (-1)^d_rel(xi') c_theta(xi', xi) mu(xi')
            entries = {
                key: val * (-1 if block.by_key[key[0]].d_rel % 2 else 1)
                for key, val in klv.get_tables(block).mults.c_theta.items()
            }
            out = _matrix_apply(entries, coeffs)
        else:
            keys = [p.key for p in block.fixed]
            entries = {
                key: val * (-1 if block.by_key[key[0]].d_rel % 2 else 1)
                for key, val in klv.get_tables(block).mults.c_theta.items()
            }
            inv = klv._solve_inverse(
                [[entries.get((r, c), 0) for c in keys] for r in keys], keys
            )
            out = _matrix_apply(inv, coeffs)
        return VirtualCharacter.make(block, target, v.normalization, out)
    raise ValueError(f"cannot convert {v.basis} to {target}")


def _wa_sign(p: BlockParam) -> int:
    return -1 if (p.l_int - p.l_int_theta) % 2 else 1


def whittaker_normalize(block: Block, v: VirtualCharacter) -> VirtualCharacter:
    """Atlas -> Whittaker, flipping each coordinate by the extension sign."""
    if v.normalization == WHITTAKER:
        return v
    if v.normalization != ATLAS:
        raise ValueError("whittaker_normalize needs a twisted character")
    out = {k: c * _wa_sign(block.by_key[k]) for k, c in v.coeffs}
    return VirtualCharacter.make(block, v.basis, WHITTAKER, out)


def atlas_normalize(block: Block, v: VirtualCharacter) -> VirtualCharacter:
    """Whittaker -> Atlas; the inverse (and identical) sign flip."""
    if v.normalization == ATLAS:
        return v
    if v.normalization != WHITTAKER:
        raise ValueError("atlas_normalize needs a twisted character")
    out = {k: c * _wa_sign(block.by_key[k]) for k, c in v.coeffs}
    return VirtualCharacter.make(block, v.basis, ATLAS, out)


def lattice_pairing(block: Block, char: VirtualCharacter,
                    sheaf: VirtualCharacter) -> int:
    """The integer pairing of a twisted character with a dual-side sheaf
    shadow, via the defining deltas <M(xi)~, mu(xi')+> = delta."""
    if char.block_key != sheaf.block_key:
        raise ValueError("pairing arguments must share a block")
    if sheaf.basis not in (DUAL_STANDARD, DUAL_IRREDUCIBLE):
        raise ValueError("second argument must be a sheaf-side character")
    if char.basis not in (STANDARD, IRREDUCIBLE):
        raise ValueError("first argument must be a character")
    left = char
    if left.normalization == ATLAS:
        left = whittaker_normalize(block, left)
    elif left.normalization != WHITTAKER:
        raise ValueError("pairing is defined for twisted characters")
    left = change_basis(block, left, STANDARD)
    right = change_basis(block, sheaf, DUAL_STANDARD)
    lc, rc = left.as_dict(), right.as_dict()
    return sum(lc[k] * rc.get(k, 0) for k in lc)


@dataclass(frozen=True)
class StableCharacterG:
    """A stable virtual character of the quasisplit unitary group in the
    stable standard basis; each basis symbol is a single standard
    representation, labeled by the multiset data of its image orbit."""

    coeffs: tuple[tuple[str, int], ...]

    @classmethod
    def make(cls, coeffs: dict[str, int]) -> "StableCharacterG":
        return cls(tuple(sorted((k, v) for k, v in coeffs.items() if v)))

    def as_dict(self) -> dict[str, int]:
        return dict(self.coeffs)

    def to_json(self) -> dict:
        return {"basis": "stable-standard", "coeffs": dict(self.coeffs)}
