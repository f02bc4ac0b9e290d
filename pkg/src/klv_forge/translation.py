"""Translation at the parameter level: from a singular infinitesimal
character to a regular one and back.

The datum shifts a theta-fixed, integrally dominant, dominant-sorted
lambda by the sum of the positive roots of one factor (applied to both
factors), which is always regular, integrally dominant and theta-fixed.
Parameters at the singular lambda are modeled as fibers of the regular
block: two regular parameters collapse when their matchings agree after
identifying the right-hand slots that carry equal singular coordinates.
Fibers are left cosets of the Young subgroup of the repeated-coordinate
pattern, so fiber counts are plain multinomials, and each fiber has a
unique Bruhat-minimal representative, which is the frozen canonical
choice.

Transport of coefficient vectors follows the wall-crossing picture:
standard modules map fiberwise onto singular standards, irreducibles
survive at fiber representatives and die elsewhere, and extension
normalization tags ride along unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import (
    IRREDUCIBLE,
    STANDARD,
    VirtualCharacter,
)
from .params import Block, get_block, param_key
from .rootdata import InfChar, bruhat_leq, longest_perm


def sum_of_positive_roots(n: int) -> tuple[Fraction, ...]:
    """(n-1, n-3, ..., 1-n) in each factor."""
    return tuple(Fraction(n - 1 - 2 * i) for i in range(n))


@dataclass(frozen=True)
class TranslationDatum:
    """lambda (possibly singular), the shift lambda1, and the regular
    lambda' = lambda + lambda1, plus the fiber partition of the regular
    block."""

    lam: InfChar
    lam1: InfChar
    lam_prime: InfChar
    fibers: tuple[tuple[str, ...], ...]  # param keys, representative first

    @property
    def block(self) -> Block:
        return get_block(self.lam_prime)

    def fiber_of(self, key: str) -> int:
        for i, fiber in enumerate(self.fibers):
            if key in fiber:
                return i
        raise KeyError(key)

    def representative(self, fiber_index: int) -> str:
        return self.fibers[fiber_index][0]

    def fiber_key(self, fiber_index: int) -> str:
        return f"F{fiber_index}:{self.representative(fiber_index)}"

    def to_json(self) -> dict:
        return {
            "lambda": _lam_json(self.lam),
            "lambda1": _lam_json(self.lam1),
            "lambda_prime": _lam_json(self.lam_prime),
            "fibers": [list(f) for f in self.fibers],
        }


def _lam_json(lam: InfChar) -> dict:
    return {
        "n": lam.n,
        "lambda_left": [str(x) for x in lam.left],
        "lambda_right": [str(x) for x in lam.right],
    }


def make_datum(lam: InfChar) -> TranslationDatum:
    """Build the translation datum for a theta-fixed, integrally dominant,
    dominant-sorted lambda."""
    if not lam.theta_fixed:
        raise ValueError("lambda must be theta-fixed")
    if not lam.integrally_dominant:
        raise ValueError("lambda must be integrally dominant")
    if lam.left != tuple(sorted(lam.left, reverse=True)):
        raise ValueError("lambda must be the dominant-sorted representative")
    n = lam.n
    rho2 = sum_of_positive_roots(n)
    lam1 = InfChar(rho2, rho2)
    lam_prime = InfChar(
        tuple(a + b for a, b in zip(lam.left, rho2)),
        tuple(a + b for a, b in zip(lam.right, rho2)),
    )
    assert lam_prime.regular and lam_prime.theta_fixed

    block = get_block(lam_prime)
    w0 = longest_perm(n)
    # right-hand slots j, j' are identified when the singular right-hand
    # coordinates agree
    rclass = {}
    for j, v in enumerate(lam.right):
        rclass[j] = lam.right.index(v)

    groups: dict[tuple[int, ...], list[str]] = {}
    for p in block.params:
        matching = tuple(w0[p.u[i]] for i in range(n))  # m = w0 . u
        collapsed = tuple(rclass[m] for m in matching)
        groups.setdefault(collapsed, []).append(p.key)

    fibers = []
    for collapsed in sorted(groups):
        keys = groups[collapsed]
        minimal = [
            k
            for k in keys
            if all(
                bruhat_leq(block.by_key[k].u, block.by_key[k2].u)
                for k2 in keys
            )
        ]
        assert len(minimal) == 1, "fiber without a unique Bruhat minimum"
        rest = sorted(k for k in keys if k != minimal[0])
        fibers.append(tuple(minimal) + tuple(rest))
    fibers.sort(key=lambda f: f[0])
    return TranslationDatum(
        lam=lam, lam1=lam1, lam_prime=lam_prime, fibers=tuple(fibers)
    )


def f_star_image(datum: TranslationDatum) -> dict[str, str]:
    """Map each regular parameter to its fiber's canonical representative."""
    out = {}
    for fiber in datum.fibers:
        for key in fiber:
            out[key] = fiber[0]
    return out


@dataclass(frozen=True)
class SingularCharacter:
    """A coefficient vector over the singular parameters (fibers), tagged
    like a VirtualCharacter."""

    lam_key: str
    basis: str
    normalization: str
    coeffs: tuple[tuple[str, int], ...]

    def as_dict(self) -> dict[str, int]:
        return dict(self.coeffs)


def singular_orbit_fiber(datum: TranslationDatum, psi) -> int:
    """The fiber of a conjugate-self-dual parameter with singular
    infinitesimal character.

    The parameter pairs exponent values, not slots; the fiber is well
    defined exactly when every repeated left exponent carries one and the
    same multiset of right partners (true for tempered parameters, where
    the partner of A is always -A).  Ambiguous parameters are rejected.
    """
    lam, lam_prime = datum.lam, datum.lam_prime
    n = lam.n
    pairs = list(psi.characters_of_weil())
    by_a: dict = {}
    for (a, b) in pairs:
        by_a.setdefault(a, []).append(b)
    for a, bs in by_a.items():
        if len(bs) > 1 and len(set(bs)) > 1:
            raise ValueError(
                "parameter pairs a repeated left exponent with distinct "
                "right partners; its wall fiber is not determined"
            )
    # one canonical slot matching
    free_right = list(range(n))
    matching = [None] * n
    for i in range(n):
        a = lam.left[i]
        b = by_a[a].pop()
        j = next(j for j in free_right if lam.right[j] == b)
        free_right.remove(j)
        matching[i] = j
    w0 = longest_perm(n)
    u = tuple(w0[m] for m in matching)
    return datum.fiber_of(param_key(u))


def fixed_representative(datum: TranslationDatum, fiber_index: int) -> str:
    """The Bruhat-minimal theta-fixed element of a fiber (the
    representative used by the twisted pipeline)."""
    block = datum.block
    fixed = [
        k for k in datum.fibers[fiber_index] if block.by_key[k].theta_fixed
    ]
    if not fixed:
        raise ValueError("fiber contains no theta-fixed parameter")
    minimal = [
        k
        for k in fixed
        if all(bruhat_leq(block.by_key[k].u, block.by_key[k2].u) for k2 in fixed)
    ]
    assert len(minimal) == 1
    return minimal[0]


def singular_packet(psi) -> tuple[TranslationDatum, int, dict[str, int]]:
    """The n-table of a conjugate-self-dual parameter with singular
    infinitesimal character, computed through the regular block at
    lambda' and pushed to the wall.

    Returns (datum, fiber index of xi_psi, n-table keyed by fiber keys).
    """
    from . import klv
    from .arthur import infinitesimal_character

    lam = infinitesimal_character(psi)
    if lam.regular:
        raise ValueError("lambda(psi) is regular; use the direct pipeline")
    if not psi.conjugate_self_dual:
        raise ValueError("psi must be conjugate-self-dual")
    datum = make_datum(lam)
    fiber = singular_orbit_fiber(datum, psi)
    rep = fixed_representative(datum, fiber)
    block = datum.block
    inv = klv.m_tilde_inverse(block)
    n_prime = {r: v for (r, c), v in inv.items() if c == rep and v}
    reg_char = VirtualCharacter.make(
        block, STANDARD, "twisted-whittaker", n_prime
    )
    pushed = translate_character(datum, reg_char)
    return datum, fiber, pushed.as_dict()


def translate_character(
    datum: TranslationDatum, v: VirtualCharacter
) -> SingularCharacter:
    """Push a character at lambda' to the wall: standards map onto their
    fiber's singular standard, irreducibles survive only at fiber
    representatives; tags are preserved."""
    if v.block_key != datum.lam_prime.key():
        raise ValueError("character does not live at lambda'")
    out: dict[str, int] = {}
    if v.basis == STANDARD:
        for key, c in v.coeffs:
            fk = datum.fiber_key(datum.fiber_of(key))
            out[fk] = out.get(fk, 0) + c
    elif v.basis == IRREDUCIBLE:
        for key, c in v.coeffs:
            idx = datum.fiber_of(key)
            if key == datum.representative(idx):
                fk = datum.fiber_key(idx)
                out[fk] = out.get(fk, 0) + c
    else:
        raise ValueError("translation acts on character bases")
    out = {k: c for k, c in out.items() if c}
    return SingularCharacter(
        lam_key=datum.lam.key(),
        basis=v.basis,
        normalization=v.normalization,
        coeffs=tuple(sorted(out.items())),
    )
