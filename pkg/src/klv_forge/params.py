"""Atlas parameters for a block at a fixed infinitesimal character.

A block at a regular, integrally dominant, theta-fixed lambda is in
bijection with S_n: the parameter xi encoded by the permutation u sits over
the twisted involution (u, w0 u^-1 w0), and both fibers of the Atlas
construction are singletons, so u is a complete invariant.  The involution
theta_x attached to xi acts on weights as the pair action composed with the
twist, and everything downstream (lengths, generator types, cross actions,
Vogan duality) is computed from it.

Lengths follow the two displayed counting formulas:

    l_int   = -( #{alpha in R+(lam) : theta_x(alpha) in R+(lam)}
                 + dim fix(theta_x) ) / 2  +  n/2
    l_theta = -( #{restricted gamma in R+_theta(lam) : theta_x(gamma) > 0}
                 + dim fix(theta_x | twist-fixed subtorus) ) / 2
              + ceil(n/2)/2

Both take values in the non-positive integers; the principal parameter
(theta_x sends all positive roots to negative ones) has both equal to 0.

The Vogan dual of the block reuses the same permutation labels with the
roles of the two Atlas coordinates exchanged: theta_y = -theta_x, dual
lengths are computed by the same counting formula from theta_y, the Bruhat
order reverses, and generator types exchange 2Ci <-> 2Cr, 2C+ <-> 2C-.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (
    InfChar,
    IntegralRoots,
    Root,
    WeylPair,
    bruhat_leq,
    compose,
    cycle_count,
    identity_perm,
    integral_root_data,
    inverse_perm,
    is_involution,
    longest_perm,
    theta_on_root,
    transposition,
    twisted_pair,
)

# generator types at a kappa-orbit (all orbits are of the two-root kind)
TWO_CI = "2Ci"
TWO_CR = "2Cr"
TWO_CP = "2C+"
TWO_CM = "2C-"

ASCENT_TYPES = (TWO_CI, TWO_CP)


def param_key(u: tuple[int, ...]) -> str:
    return ",".join(str(x) for x in u)


def key_to_perm(key: str) -> tuple[int, ...]:
    return tuple(int(x) for x in key.split(","))


@dataclass(frozen=True)
class BlockParam:
    """One Atlas parameter xi = (x, y), encoded by the permutation u."""

    u: tuple[int, ...]
    l_int: int
    l_int_theta: int
    d_rel: int
    theta_fixed: bool

    @property
    def key(self) -> str:
        return param_key(self.u)

    def __repr__(self) -> str:
        return f"BlockParam(u={self.u}, l={self.l_int}, lt={self.l_int_theta})"


@dataclass(frozen=True)
class ExtendedParam:
    """An extended parameter (lam, tau, ell, t); the preferred form has
    ell = t = 0 and fourth root of unity z = 1."""

    lam: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]
    tau: tuple[tuple[int, ...], tuple[int, ...]]
    ell: tuple[tuple[int, ...], tuple[int, ...]]
    t: tuple[tuple[int, ...], tuple[int, ...]]
    w: WeylPair

    @property
    def z_exponent(self) -> int:
        """z = i^k for this k in {0, 1, 2, 3}."""
        return z_exponent(self.lam, self.tau, self.t, self.w)

    @property
    def z(self) -> complex:
        return 1j ** self.z_exponent


def _pair_dot(a, b) -> Fraction:
    return sum(
        (x * y for side_a, side_b in zip(a, b) for x, y in zip(side_a, side_b)),
        Fraction(0),
    )


def z_exponent(lam, tau, t, w: WeylPair) -> int:
    """Exponent k with z(E) = i^k = i^<tau,(1+w)t> * (-1)^<lam,t>.

    Requires <lam, t> to be an integer (true for valid extended parameters).
    """
    wt = w.act_on_weight(t)
    one_plus_w_t = tuple(
        tuple(x + y for x, y in zip(side, wside)) for side, wside in zip(t, wt)
    )
    a = _pair_dot(tau, one_plus_w_t)
    b = _pair_dot(lam, t)
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError("z(E) requires integral pairings")
    return (int(a) + 2 * int(b)) % 4


def theta_x_on_root(u: tuple[int, ...], root: Root, n: int) -> Root:
    """theta_x(e_i - e_j): the twist followed by the Weyl pair of u."""
    u_inv = inverse_perm(u)
    f, i, j = root
    if f == 0:
        return (1, n - 1 - u_inv[j], n - 1 - u_inv[i])
    return (0, u[n - 1 - j], u[n - 1 - i])


def theta_y_on_root(u: tuple[int, ...], root: Root, n: int) -> Root:
    """The dual-side involution: theta_y = -theta_x on weights."""
    f, i, j = theta_x_on_root(u, root, n)
    return (f, j, i)


class Block:
    """All parameters at one regular, integrally dominant, theta-fixed
    infinitesimal character, with cached lengths, types and partner maps.

    Immutable after construction, safe to share across threads.
    """

    def __init__(self, lam: InfChar):
        if not lam.theta_fixed:
            raise ValueError("lambda must be theta-fixed")
        if not lam.regular:
            raise ValueError(
                "singular lambda: route through the translation module"
            )
        if not lam.integrally_dominant:
            raise ValueError("lambda must be integrally dominant")
        if lam.left != tuple(sorted(lam.left, reverse=True)):
            raise ValueError("lambda must be the dominant-sorted representative")
        self.lam = lam
        self.n = lam.n
        self.roots: IntegralRoots = integral_root_data(lam)
        self.kappas: tuple[tuple[int, int], ...] = self.roots.kappa_orbits
        self._pos_set = set(self.roots.positive)

        gen_l = self._l_int(identity_perm(self.n))
        self.params: list[BlockParam] = []
        self.by_key: dict[str, BlockParam] = {}
        for u in sorted(itertools.permutations(range(self.n))):
            if not self._valid(u):
                continue
            l_i = self._l_int(u)
            fixed = is_involution(u)
            p = BlockParam(
                u=u,
                l_int=l_i,
                # meaningful only on the theta-fixed sublist
                l_int_theta=self._l_int_theta(u) if fixed else 0,
                d_rel=l_i - gen_l,
                theta_fixed=fixed,
            )
            self.params.append(p)
            self.by_key[p.key] = p
        self.fixed: list[BlockParam] = [p for p in self.params if p.theta_fixed]
        self.fixed_index = {p.key: i for i, p in enumerate(self.fixed)}

    # -- enumeration ------------------------------------------------------

    def _valid(self, u: tuple[int, ...]) -> bool:
        """A permutation encodes a parameter at this lambda exactly when
        its matching pairs exponents of honest unitary-axis characters:
        lambda_L[u(i)] + lambda_L[i] must be an integer for every i.  At a
        fully integral lambda every permutation qualifies and the block
        has n! elements."""
        return all(
            (self.lam.left[u[i]] + self.lam.left[i]).denominator == 1
            for i in range(self.n)
        )

    # -- lengths --------------------------------------------------------

    def _l_int(self, u: tuple[int, ...]) -> int:
        count = sum(
            1
            for alpha in self.roots.positive
            if theta_x_on_root(u, alpha, self.n) in self._pos_set
        )
        # dim fix(theta_x) = n for every u in this block
        frac = Fraction(-(count + self.n), 2) + Fraction(self.n, 2)
        assert frac.denominator == 1
        return int(frac)

    def _l_int_theta(self, u: tuple[int, ...]) -> int:
        if not is_involution(u):
            raise ValueError("theta-integral length needs a theta-fixed parameter")
        restricted = set(self.roots.theta_positive)
        # theta_x carries the restricted root (i, j) to (u(i), u(j))
        count = sum(
            1
            for (i, j) in restricted
            if u[i] < u[j] and (u[i], u[j]) in restricted
        )
        dim_fix = cycle_count(u)
        frac = Fraction(-(count + dim_fix), 2) + Fraction((self.n + 1) // 2, 2)
        assert frac.denominator == 1
        return int(frac)

    # -- basic lookups ----------------------------------------------------

    def param(self, u) -> BlockParam:
        key = u if isinstance(u, str) else param_key(tuple(u))
        try:
            return self.by_key[key]
        except KeyError:
            raise ValueError(
                f"{key} does not encode a parameter at this lambda"
            ) from None

    @property
    def generic(self) -> BlockParam:
        """The Bruhat-minimal parameter; its standard module is irreducible."""
        return self.param(identity_perm(self.n))

    @property
    def principal(self) -> BlockParam:
        """The parameter whose theta_x makes every positive root negative.
        It exists whenever the reversal matching is a parameter at this
        lambda (always at fully integral lambda)."""
        return self.param(longest_perm(self.n))

    def lengths(self, p: BlockParam) -> tuple[int, int, int]:
        """(l_int, l_int_theta, d_rel); the relative dimension offset is
        measured from the generic parameter."""
        return (p.l_int, p.l_int_theta, p.d_rel)

    def bruhat_leq(self, p1: BlockParam, p2: BlockParam) -> bool:
        return bruhat_leq(p1.u, p2.u)

    # -- generator types and partners --------------------------------------

    def kappa_type(self, kappa: tuple[int, int], p: BlockParam) -> str:
        """Type of the generator orbit at xi: 2Ci / 2Cr / 2C+ / 2C-."""
        i, j = kappa
        u_inv = inverse_perm(p.u)
        if u_inv[i] == i and u_inv[j] == j:
            return TWO_CI
        if u_inv[i] == j and u_inv[j] == i:
            return TWO_CR
        return TWO_CP if u_inv[i] < u_inv[j] else TWO_CM

    def dual_kappa_type(self, kappa: tuple[int, int], p: BlockParam) -> str:
        """Type of the dual generator at the dual parameter, classified
        independently through theta_y; exchanges i <-> r and + <-> -."""
        i, j = kappa
        alpha = (0, i, j)
        image = theta_y_on_root(p.u, alpha, self.n)
        beta = theta_on_root(alpha, self.n)
        if image == beta:
            return TWO_CI
        if image == (beta[0], beta[2], beta[1]):
            return TWO_CR
        return TWO_CP if image[1] < image[2] else TWO_CM

    def cross_partner(self, kappa: tuple[int, int], p: BlockParam) -> BlockParam:
        """The Hecke partner of a theta-fixed parameter at kappa: the
        single-reflection cross for 2Ci/2Cr, the w_kappa cross for 2C+/2C-."""
        i, j = kappa
        t = transposition(self.n, i, j)
        kind = self.kappa_type(kappa, p)
        if kind in (TWO_CI, TWO_CR):
            u2 = compose(t, p.u)
        else:
            u2 = compose(t, compose(p.u, t))
        return self.param(u2)

    def cross_action(self, w: WeylPair, p: BlockParam) -> BlockParam:
        """Cross action: conjugate both Atlas coordinates by w."""
        w0 = longest_perm(self.n)
        u2 = compose(
            w.w1, compose(p.u, compose(w0, compose(inverse_perm(w.w2), w0)))
        )
        return self.param(u2)

    # -- Vogan duality -----------------------------------------------------

    def dual_l_int(self, p: BlockParam) -> int:
        """Integral length of the dual parameter, computed from theta_y by
        the same counting formula."""
        count = sum(
            1
            for alpha in self.roots.positive
            if theta_y_on_root(p.u, alpha, self.n) in self._pos_set
        )
        frac = Fraction(-(count + self.n), 2) + Fraction(self.n, 2)
        assert frac.denominator == 1
        return int(frac)

    def dual_bruhat_leq(self, p1: BlockParam, p2: BlockParam) -> bool:
        return bruhat_leq(p2.u, p1.u)

    def vogan_dual(self, p: BlockParam) -> BlockParam:
        """The dual parameter (y, x).  The dual block reuses the same
        permutation labels, so this is the identity on keys; the dual data
        (lengths, order, types) is read through the dual_* accessors."""
        return p

    # -- extended parameters ------------------------------------------------

    def preferred_extension(self, p: BlockParam) -> ExtendedParam:
        """The preferred extended parameter (lam, tau, 0, 0), which has
        z = 1 and defines the Atlas extensions."""
        if not p.theta_fixed:
            raise ValueError("only theta-fixed parameters extend")
        zero = (tuple([0] * self.n), tuple([0] * self.n))
        return ExtendedParam(
            lam=(self.lam.left, self.lam.right),
            tau=zero,
            ell=zero,
            t=zero,
            w=twisted_pair(p.u),
        )

    # -- serialization --------------------------------------------------------

    def param_record(self, p: BlockParam) -> dict:
        return {
            "u": list(p.u),
            "theta_fixed": p.theta_fixed,
            "l_int": p.l_int,
            "l_int_theta": p.l_int_theta if p.theta_fixed else None,
            "d_rel": p.d_rel,
            "types": {
                str(k): self.kappa_type(kappa, p)
                for k, kappa in enumerate(self.kappas)
            },
            "dual_u": list(self.vogan_dual(p).u),
        }


def enumerate_params(lam: InfChar) -> list[BlockParam]:
    """All parameters of the block at lam, in canonical order, with the
    theta-fixed sublist flagged on each record."""
    return list(get_block(lam).params)


def distinguished_params(lam: InfChar) -> tuple[BlockParam, BlockParam]:
    """(generic, principal): the unique Bruhat-minimal parameter and the
    one sending all positive roots to negative ones."""
    block = get_block(lam)
    return block.generic, block.principal


# A process-wide cache of constructed blocks; KLV_FORGE_CACHE only controls
# where the CLI persists derived tables, never correctness.
_BLOCK_CACHE: dict[str, Block] = {}


def get_block(lam: InfChar) -> Block:
    key = lam.key()
    if key not in _BLOCK_CACHE:
        _BLOCK_CACHE[key] = Block(lam)
    return _BLOCK_CACHE[key]


def cache_dir() -> str | None:
    return os.environ.get("KLV_FORGE_CACHE")
