"""Based root datum of GL_n x GL_n with the swap/antidiagonal twist.

Permutations are tuples in one-line notation on range(n), as in
``(1, 0, 2)`` for the first simple transposition of S_3.  A weight of the
doubled group is a pair of length-n tuples of Fractions ``(left, right)``.

The twist acts on weights by

    theta(mu_L, mu_R) = (-rev(mu_R), -rev(mu_L)),

coordinate reversal composed with negation in each factor; the antidiagonal
matrix behind it is never materialized.  Roots of the doubled group are
triples ``(factor, i, j)`` meaning e_i - e_j in that factor (factor 0 or 1),
positive when i < j.

>>> theta_on_weight(((1, 0), (0, -1)))
((1, 0), (0, -1))
>>> theta_on_weight(((1, 0), (0, 0)))
((0, 0), (0, -1))
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


# ---------------------------------------------------------------------------
# permutations


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def longest_perm(n: int) -> tuple[int, ...]:
    """The order-reversing permutation w0 of S_n."""
    return tuple(range(n - 1, -1, -1))


def compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a*b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def inverse_perm(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def inversions(p: tuple[int, ...]) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def is_involution(p: tuple[int, ...]) -> bool:
    return all(p[p[i]] == i for i in range(len(p)))


def cycle_count(p: tuple[int, ...]) -> int:
    seen = [False] * len(p)
    count = 0
    for i in range(len(p)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
    return count


def permute_vector(p: tuple[int, ...], v: tuple) -> tuple:
    """Place v[i] at position p(i):  (p.v)[p(i)] = v[i]."""
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[p[i]] = x
    return tuple(out)


def bruhat_leq(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    """Bruhat order on S_n: u <= v iff r_u(i, j) >= r_v(i, j) for all i, j,
    where r_w(i, j) = #{k <= i : w(k) <= j} is the rank matrix.

    >>> bruhat_leq((0, 1, 2), (2, 1, 0))
    True
    >>> bruhat_leq((1, 0, 2), (0, 2, 1))
    False
    """
    n = len(u)
    for i in range(n - 1):
        cu = sorted(u[: i + 1])
        cv = sorted(v[: i + 1])
        # sorted prefixes: u <= v iff cu is entrywise <= cv
        if any(a > b for a, b in zip(cu, cv)):
            return False
    return True


# ---------------------------------------------------------------------------
# the twist on weights and Weyl pairs

Weight = tuple[tuple, tuple]


def theta_on_weight(mu: Weight) -> Weight:
    """Apply the twist to a weight (mu_L, mu_R) of GL_n x GL_n."""
    left, right = mu
    return (tuple(-x for x in reversed(right)), tuple(-x for x in reversed(left)))


@dataclass(frozen=True)
class WeylPair:
    """An element (w1, w2) of the doubled Weyl group S_n x S_n."""

    w1: tuple[int, ...]
    w2: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.w1)

    def compose(self, other: "WeylPair") -> "WeylPair":
        return WeylPair(compose(self.w1, other.w1), compose(self.w2, other.w2))

    def inverse(self) -> "WeylPair":
        return WeylPair(inverse_perm(self.w1), inverse_perm(self.w2))

    def delta0(self) -> "WeylPair":
        """The twist action w -> (w0 w2 w0, w0 w1 w0) on Weyl pairs."""
        w0 = longest_perm(self.n)
        return WeylPair(
            compose(w0, compose(self.w2, w0)),
            compose(w0, compose(self.w1, w0)),
        )

    def is_twisted_involution(self) -> bool:
        w = self.compose(self.delta0())
        return w.w1 == identity_perm(self.n) and w.w2 == identity_perm(self.n)

    def is_theta_fixed(self) -> bool:
        return self.delta0() == self

    def act_on_weight(self, mu: Weight) -> Weight:
        return (permute_vector(self.w1, mu[0]), permute_vector(self.w2, mu[1]))


def twisted_pair(u: tuple[int, ...]) -> WeylPair:
    """The twisted involution (u, w0 u^-1 w0) encoded by u."""
    w0 = longest_perm(len(u))
    return WeylPair(u, compose(w0, compose(inverse_perm(u), w0)))


def twisted_involution_set(n: int) -> list[WeylPair]:
    """All w in S_n x S_n with w * delta0(w) = 1, in lex order of the
    encoding permutation.  There are exactly n! of them, one per u, and the
    theta-fixed ones correspond to involutions u.

    >>> [w.is_theta_fixed() for w in twisted_involution_set(2)]
    [True, True]
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    pairs = [twisted_pair(u) for u in sorted(itertools.permutations(range(n)))]
    assert all(p.is_twisted_involution() for p in pairs)
    return pairs


# ---------------------------------------------------------------------------
# infinitesimal characters

Root = tuple[int, int, int]  # (factor, i, j) = e_i - e_j in that factor


@dataclass(frozen=True)
class InfChar:
    """An infinitesimal character (lambda_L, lambda_R), exact rationals.

    The canonical representative of an orbit is coordinate-sorted dominant
    (descending in each factor).
    """

    left: tuple[Fraction, ...]
    right: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.left) != len(self.right):
            raise ValueError("factors must have equal rank")

    @property
    def n(self) -> int:
        return len(self.left)

    @classmethod
    def make(cls, left, right) -> "InfChar":
        return cls(
            tuple(Fraction(x) for x in left),
            tuple(Fraction(x) for x in right),
        )

    @classmethod
    def canonical(cls, left, right) -> "InfChar":
        """Dominant-sorted representative of the orbit of (left, right)."""
        return cls(
            tuple(sorted((Fraction(x) for x in left), reverse=True)),
            tuple(sorted((Fraction(x) for x in right), reverse=True)),
        )

    def side(self, factor: int) -> tuple[Fraction, ...]:
        return self.left if factor == 0 else self.right

    def pairing(self, root: Root) -> Fraction:
        """<lambda, coroot of e_i - e_j> in the given factor."""
        f, i, j = root
        lam = self.side(f)
        return lam[i] - lam[j]

    @property
    def theta_fixed(self) -> bool:
        return self.right == tuple(-x for x in reversed(self.left))

    @property
    def regular(self) -> bool:
        return len(set(self.left)) == self.n and len(set(self.right)) == self.n

    @property
    def integrally_dominant(self) -> bool:
        for lam in (self.left, self.right):
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    d = lam[i] - lam[j]
                    if d.denominator == 1 and d < 0:
                        return False
        return True

    def all_roots(self) -> list[Root]:
        n = self.n
        return [
            (f, i, j)
            for f in (0, 1)
            for i in range(n)
            for j in range(n)
            if i != j
        ]

    def key(self) -> str:
        return ";".join(
            ",".join(str(x) for x in side) for side in (self.left, self.right)
        )


def canonical_lambda(n: int) -> InfChar:
    """The canonical regular integral theta-fixed infinitesimal character:
    lambda_L = (n-1, ..., 1, 0) and lambda_R = -rev(lambda_L)."""
    left = tuple(Fraction(n - 1 - i) for i in range(n))
    right = tuple(-x for x in reversed(left))
    return InfChar(left, right)


def theta_on_root(root: Root, n: int) -> Root:
    """The twist on roots: swaps factors, e_i - e_j -> e_{w0 j} - e_{w0 i}."""
    f, i, j = root
    return (1 - f, n - 1 - j, n - 1 - i)


def root_is_positive(root: Root) -> bool:
    return root[1] < root[2]


@dataclass(frozen=True)
class IntegralRoots:
    """Integral root data R(lambda) with the twist-orbit generators.

    ``kappa_orbits`` lists the theta-orbits of simple roots of R+(lambda) by
    the factor-0 member (i, j); every orbit pairs one root from each factor
    and the two members are orthogonal, so all orbits are of the two-root
    kind.  ``theta_positive`` is the positive part of the restricted system
    for the fixed group: pairs (i, j) with 2(lambda_L[i] - lambda_L[j]) a
    positive integer.
    """

    lam: InfChar
    roots: tuple[Root, ...]
    positive: tuple[Root, ...]
    theta_positive: tuple[tuple[int, int], ...]
    kappa_orbits: tuple[tuple[int, int], ...]

    def generator(self, kappa: tuple[int, int]) -> WeylPair:
        """w_kappa = s_alpha s_{theta(alpha)}, a theta-fixed pair of
        orthogonal reflections."""
        n = self.lam.n
        i, j = kappa
        t1 = transposition(n, i, j)
        t2 = transposition(n, n - 1 - j, n - 1 - i)
        return WeylPair(t1, t2)


def integral_root_data(lam: InfChar) -> IntegralRoots:
    """Compute R(lambda), R+(lambda), the restricted positive part and the
    kappa-orbit generators.  Rejects lambda that is not integrally dominant
    (normalize upstream)."""
    if not lam.integrally_dominant:
        raise ValueError("lambda must be integrally dominant")
    n = lam.n
    roots = tuple(r for r in lam.all_roots() if lam.pairing(r).denominator == 1)
    positive = tuple(r for r in roots if lam.pairing(r) > 0)

    theta_positive = tuple(
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if (2 * (lam.left[i] - lam.left[j])).denominator == 1
        and lam.left[i] - lam.left[j] > 0
    )

    # Simple roots of R+(lambda) in factor 0: within each chain of mutually
    # integral coordinates, consecutive positions.
    factor0 = {(i, j) for (f, i, j) in positive if f == 0}
    simple = sorted(
        (i, j)
        for (i, j) in factor0
        if not any(
            (i, k) in factor0 and (k, j) in factor0 for k in range(i + 1, j)
        )
    )
    return IntegralRoots(
        lam=lam,
        roots=roots,
        positive=positive,
        theta_positive=theta_positive,
        kappa_orbits=tuple(simple),
    )
