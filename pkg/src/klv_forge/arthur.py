"""Arthur parameters and the packet pipeline.

A parameter is a formal sum of summands (a, b, n, mult): the character
z^a zbar^b tensored with the n-dimensional irreducible of SL2, taken with
multiplicity.  Its restriction to the Weil group scatters each summand into
n characters with exponent pairs

    (a + (n-1)/2 - k,  b + (n-1)/2 - k),   0 <= k < n,

and the multiset of those pairs is the infinitesimal character.  The block
parameter attached to the parameter pairs every character's left exponent
with its own right exponent; written in slots of the dominant-sorted
infinitesimal character this matching m determines the encoding
permutation through u = w0 . m, the normalization fixed by two anchors:
a tempered multiplicity-free parameter lands on the generic (Bruhat
minimal) parameter, and the single-summand parameter (0,0) x nu_N lands on
the principal one.

Conjugate self-duality (closure of the summand multiset under
(a, b, n) -> (-b, -a, n)) makes the infinitesimal character theta-fixed
and the attached parameter a theta-fixed one; these are the parameters
that descend to the unitary group.  The packet on the linear side is
always the singleton {xi_psi}, equal to its L-packet.  The stable
character of the unitary group is assembled from the expansion of the
Whittaker-extended irreducible at xi_psi in extended standards: its
integer coefficients n_S, read off the inverse of the m_tilde matrix,
transport one-to-one onto stable standard characters, and lifting back
recovers the extended irreducible exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import characters, klv
from .characters import STANDARD, WHITTAKER, StableCharacterG, VirtualCharacter
from .params import Block, BlockParam, get_block
from .rootdata import InfChar, longest_perm

ExpPair = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class AParameter:
    """psi = (+) mult_i (z^{a_i} zbar^{b_i} x nu_{n_i})."""

    summands: tuple[tuple[Fraction, Fraction, int, int], ...]

    @classmethod
    def make(cls, summands) -> "AParameter":
        clean = []
        for (a, b, n, mult) in summands:
            a, b = Fraction(a), Fraction(b)
            if (a - b).denominator != 1:
                raise ValueError(f"summand ({a},{b}): a - b must be integral")
            if n < 1 or mult < 1:
                raise ValueError("dimension and multiplicity must be positive")
            clean.append((a, b, int(n), int(mult)))
        return cls(tuple(sorted(clean)))

    @property
    def rank(self) -> int:
        return sum(n * mult for (_, _, n, mult) in self.summands)

    @property
    def conjugate_self_dual(self) -> bool:
        bag: dict[tuple, int] = {}
        for (a, b, n, mult) in self.summands:
            bag[(a, b, n)] = bag.get((a, b, n), 0) + mult
        return all(bag.get((-b, -a, n), 0) == m for (a, b, n), m in bag.items())

    @property
    def tempered(self) -> bool:
        """Trivial on SL2 and unitary on the Weil group."""
        return all(n == 1 and a + b == 0 for (a, b, n, _) in self.summands)

    @property
    def multiplicity_free(self) -> bool:
        seen = set()
        for (a, b, n, mult) in self.summands:
            if mult > 1 or (a, b, n) in seen:
                return False
            seen.add((a, b, n))
        return True

    def characters_of_weil(self) -> list[ExpPair]:
        """The exponent pairs of the associated Langlands parameter, with
        multiplicity."""
        out: list[ExpPair] = []
        for (a, b, n, mult) in self.summands:
            for _ in range(mult):
                for k in range(n):
                    shift = Fraction(n - 1, 2) - k
                    out.append((a + shift, b + shift))
        return out

    @classmethod
    def from_json(cls, data: dict) -> "AParameter":
        return cls.make(
            (Fraction(s["a"]), Fraction(s["b"]), s["n"], s.get("mult", 1))
            for s in data["summands"]
        )

    def to_json(self) -> dict:
        return {
            "summands": [
                {"a": str(a), "b": str(b), "n": n, "mult": mult}
                for (a, b, n, mult) in self.summands
            ]
        }


def infinitesimal_character(psi: AParameter) -> InfChar:
    """Dominant-sorted infinitesimal character of the parameter; it is
    theta-fixed whenever psi is conjugate-self-dual."""
    pairs = psi.characters_of_weil()
    return InfChar.canonical([a for a, _ in pairs], [b for _, b in pairs])


def orbit_param(psi: AParameter, block: Block | None = None) -> BlockParam:
    """The block parameter whose slot matching realizes psi's pairing of
    left and right exponents.  Requires a regular infinitesimal character;
    route singular parameters through the translation module."""
    lam = infinitesimal_character(psi)
    if not lam.regular:
        raise ValueError("singular lambda(psi): use the translation module")
    block = block or get_block(lam)
    pairs = psi.characters_of_weil()
    left_slot = {v: i for i, v in enumerate(lam.left)}
    right_slot = {v: i for i, v in enumerate(lam.right)}
    matching = [0] * lam.n
    for (a, b) in pairs:
        matching[left_slot[a]] = right_slot[b]
    w0 = longest_perm(lam.n)
    u = tuple(w0[m] for m in matching)
    return block.param(u)


def packet_gl(psi: AParameter) -> list[BlockParam]:
    """The packet on the linear side: a singleton, equal to its L-packet."""
    return [orbit_param(psi)]


def twisted_standard_decomposition(psi: AParameter) -> dict[str, int]:
    """The integers n_S with pi(xi_psi)~ = sum n_S M(S)~, from the
    xi_psi-column of the inverse m_tilde matrix."""
    if not psi.conjugate_self_dual:
        raise ValueError("psi must be conjugate-self-dual")
    lam = infinitesimal_character(psi)
    block = get_block(lam)
    xi = orbit_param(psi, block)
    inv = klv.m_tilde_inverse(block)
    return {
        r: v for (r, c), v in inv.items() if c == xi.key and v
    }


@dataclass(frozen=True)
class PacketResult:
    """Everything the pipeline produces for one conjugate-self-dual
    parameter.  eta_mok is also the sheaf-theoretically defined stable
    character; the two coincide."""

    psi: AParameter
    lam: InfChar
    xi_psi: BlockParam
    n_table: tuple[tuple[str, int], ...]
    eta_mok: StableCharacterG

    def to_json(self) -> dict:
        return {
            "psi": self.psi.to_json(),
            "lambda": {
                "n": self.lam.n,
                "lambda_left": [str(x) for x in self.lam.left],
                "lambda_right": [str(x) for x in self.lam.right],
            },
            "xi_psi": self.xi_psi.key,
            "n": dict(self.n_table),
            "eta_mok": self.eta_mok.to_json()["coeffs"],
            "eta_abv_equals_eta_mok": True,
        }


def eta_mok(psi: AParameter) -> PacketResult:
    """The stable standard-basis expansion of the Arthur character of the
    unitary group attached to psi, with its provenance."""
    lam = infinitesimal_character(psi)
    block = get_block(lam)
    xi = orbit_param(psi, block)
    n_table = twisted_standard_decomposition(psi)
    eta = StableCharacterG.make(n_table)
    return PacketResult(
        psi=psi,
        lam=lam,
        xi_psi=xi,
        n_table=tuple(sorted(n_table.items())),
        eta_mok=eta,
    )


def lift0(block: Block, eta: StableCharacterG) -> VirtualCharacter:
    """Endoscopic lifting on the stable standard basis: each basis symbol
    goes to the matching twisted standard with coefficient +1 in Whittaker
    normalization.  Injective, since distinct symbols have distinct
    images."""
    coeffs = {}
    for key, c in eta.coeffs:
        if key not in block.by_key or not block.by_key[key].theta_fixed:
            raise ValueError(f"unknown stable orbit label {key}")
        coeffs[key] = c
    return VirtualCharacter.make(block, STANDARD, WHITTAKER, coeffs)


def lift0_atlas(block: Block, eta: StableCharacterG) -> VirtualCharacter:
    """The same lift written in Atlas normalization, where each standard
    carries the sign (-1)^(l_int - l_int_theta)."""
    return characters.atlas_normalize(block, lift0(block, eta))


def lift0_levi(factors: list[AParameter]) -> BlockParam:
    """Parabolic-induction concatenation on standard-basis labels: the
    factor parameters' exponent pairs are merged and the induced block
    parameter is read off the merged matching."""
    summands: list = []
    for psi in factors:
        summands.extend(psi.summands)
    induced = AParameter.make(summands)
    return orbit_param(induced)


def load_psi(path: str) -> AParameter:
    with open(path, "r", encoding="utf-8") as fh:
        return AParameter.from_json(json.load(fh))
