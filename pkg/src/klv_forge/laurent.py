"""Exact sparse Laurent polynomials in the formal variable q^(1/2).

A polynomial is a map from half-integer exponents to integer coefficients.
Exponents are stored in *half units*: the integer key k stands for q^(k/2),
so no rationals ever appear in exponent arithmetic.  Zero coefficients are
never stored, and printing is by ascending exponent, which makes the string
form canonical.

>>> p = HalfLaurent.q() + HalfLaurent.one()
>>> print(p)
1 + q
>>> print(p.bar())
q^-1 + 1
>>> p * p == HalfLaurent.from_q({0: 1, 1: 2, 2: 1})
True
"""
from __future__ import annotations

from fractions import Fraction


class ConventionError(Exception):
    """A mathematical convention failure (non-exact division, unsolvable
    duality equation, degree-bound violation).  Signals that an orientation
    or sign convention upstream is wrong, not a user error."""


class HalfLaurent:
    """An element of Z[q^(1/2), q^(-1/2)], exact and immutable in spirit.

    ``coeffs`` maps half-exponents (ints, in units of q^(1/2)) to nonzero
    integer coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if c != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "HalfLaurent":
        return cls({})

    @classmethod
    def one(cls) -> "HalfLaurent":
        return cls({0: 1})

    @classmethod
    def q(cls) -> "HalfLaurent":
        return cls({2: 1})

    @classmethod
    def q_half_power(cls, k: int, coeff: int = 1) -> "HalfLaurent":
        """coeff * q^(k/2), with k in half units."""
        return cls({k: coeff})

    @classmethod
    def q_power(cls, e: int, coeff: int = 1) -> "HalfLaurent":
        """coeff * q^e for an integer or half-integer exponent e."""
        if isinstance(e, Fraction):
            ke = 2 * e
            if ke.denominator != 1:
                raise ValueError("exponent must be a half integer")
            return cls({int(ke): coeff})
        return cls({2 * e: coeff})

    @classmethod
    def from_q(cls, qcoeffs: dict[int, int]) -> "HalfLaurent":
        """Build from a map of ordinary q-exponents to coefficients."""
        return cls({2 * e: c for e, c in qcoeffs.items()})

    # -- ring structure -----------------------------------------------

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return HalfLaurent(out)

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent({k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfLaurent({k: c * other for k, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return HalfLaurent(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HalfLaurent({0: other})
        return isinstance(other, HalfLaurent) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- the operations the Hecke machinery needs ----------------------

    def bar(self) -> "HalfLaurent":
        """The involution q^(1/2) -> q^(-1/2) (exponent negation).

        >>> print(HalfLaurent.q().bar())
        q^-1
        """
        return HalfLaurent({-k: c for k, c in self.coeffs.items()})

    def shift(self, k_half: int) -> "HalfLaurent":
        """Multiply by q^(k_half/2)."""
        return HalfLaurent({k + k_half: c for k, c in self.coeffs.items()})

    def at_one(self) -> int:
        """Evaluate at q = 1 (so also q^(1/2) = 1)."""
        return sum(self.coeffs.values())

    def degree_half(self) -> int:
        """Largest exponent in half units; raises on the zero polynomial."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def exact_div(self, other: "HalfLaurent") -> "HalfLaurent":
        """Exact division in Z[q^(1/2), q^(-1/2)].

        Raises ConventionError when the division is not exact; the duality
        recursion treats that as an upstream convention failure.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return HalfLaurent.zero()
        rem = dict(self.coeffs)
        dk = max(other.coeffs)
        dc = other.coeffs[dk]
        # any exact quotient is supported above this exponent
        floor = min(self.coeffs) - min(other.coeffs)
        quot: dict[int, int] = {}
        while rem:
            k = max(rem)
            c = rem[k]
            if c % dc != 0 or k - dk < floor:
                raise ConventionError(f"non-exact division: {self} / {other}")
            qk, qc = k - dk, c // dc
            quot[qk] = quot.get(qk, 0) + qc
            for ok, oc in other.coeffs.items():
                nk = ok + qk
                nv = rem.get(nk, 0) - oc * qc
                if nv:
                    rem[nk] = nv
                else:
                    rem.pop(nk, None)
        return HalfLaurent(quot)

    # -- presentation ---------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if k == 0:
                term = str(abs(c))
            else:
                e = Fraction(k, 2)
                mag = "q" if e == 1 else f"q^{e}"
                term = mag if abs(c) == 1 else f"{abs(c)}*{mag}"
            parts.append(("- " if c < 0 else "+ ") + term)
        first = parts[0]
        text = (first[2:] if first.startswith("+ ") else "-" + first[2:])
        return text + ("" if len(parts) == 1 else " " + " ".join(parts[1:]))

    def __repr__(self) -> str:
        return f"HalfLaurent({self.coeffs!r})"

    def to_json(self) -> dict[str, int]:
        """Serialize as {half-exponent: coefficient} with string keys."""
        return {str(k): self.coeffs[k] for k in sorted(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict[str, int]) -> "HalfLaurent":
        return cls({int(k): v for k, v in data.items()})
