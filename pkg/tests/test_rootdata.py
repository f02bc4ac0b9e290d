import itertools
from fractions import Fraction

import pytest

from klv_forge.rootdata import (
    InfChar,
    bruhat_leq,
    canonical_lambda,
    compose,
    integral_root_data,
    inversions,
    longest_perm,
    theta_on_root,
    theta_on_weight,
    transposition,
    twisted_involution_set,
    twisted_pair,
)

# involution counts of S_n
INVOLUTIONS = {1: 1, 2: 2, 3: 4, 4: 10, 5: 26, 6: 76}


def test_theta_fixes_a_theta_fixed_weight():
    assert theta_on_weight(((1, 0), (0, -1))) == ((1, 0), (0, -1))


def test_theta_on_weight_direct_evaluation():
    assert theta_on_weight(((1, 0), (0, 0))) == ((0, 0), (0, -1))


def test_theta_on_weight_is_an_involution():
    mu = ((3, -1, 2), (0, 5, -4))
    assert theta_on_weight(theta_on_weight(mu)) == mu


@pytest.mark.parametrize("n", range(1, 7))
def test_twisted_involution_counts(n):
    pairs = twisted_involution_set(n)
    assert len(pairs) == len(list(itertools.permutations(range(n))))
    fixed = [w for w in pairs if w.is_theta_fixed()]
    assert len(fixed) == INVOLUTIONS[n]


def test_twisted_involutions_have_the_encoded_shape():
    w0 = longest_perm(3)
    for w in twisted_involution_set(3):
        assert w.w2 == compose(w0, compose(tuple(w.w1.index(i) for i in range(3)), w0))


def test_integral_root_data_full_block():
    lam = InfChar.make((1, 0), (0, -1))
    data = integral_root_data(lam)
    assert len(data.roots) == 4
    assert len(data.positive) == 2
    assert data.kappa_orbits == ((0, 1),)
    assert len(data.theta_positive) == 1


def test_integral_root_data_half_integral():
    lam = InfChar.make((Fraction(1, 2), 0), (0, Fraction(-1, 2)))
    data = integral_root_data(lam)
    assert data.roots == ()
    assert data.kappa_orbits == ()
    # the restricted pairing doubles, so the restricted root survives
    assert data.theta_positive == ((0, 1),)


def test_integral_root_data_rank_one():
    lam = canonical_lambda(1)
    data = integral_root_data(lam)
    assert data.roots == () and data.kappa_orbits == ()


def test_integral_root_data_rejects_non_dominant():
    lam = InfChar.make((0, 1), (-1, 0))
    with pytest.raises(ValueError):
        integral_root_data(lam)


def test_kappa_generators_are_orthogonal_theta_fixed_involutions():
    for n in (2, 3, 4):
        lam = canonical_lambda(n)
        data = integral_root_data(lam)
        for kappa in data.kappa_orbits:
            w = data.generator(kappa)
            assert w.is_theta_fixed()
            ww = w.compose(w)
            assert ww.w1 == tuple(range(n)) and ww.w2 == tuple(range(n))
            # the two members of the orbit live in different factors, so
            # they are orthogonal
            i, j = kappa
            alpha = (0, i, j)
            beta = theta_on_root(alpha, n)
            assert beta[0] == 1


def test_twist_preserves_integral_positivity():
    for n in (2, 3, 4):
        data = integral_root_data(canonical_lambda(n))
        pos = set(data.positive)
        for alpha in data.positive:
            assert theta_on_root(alpha, n) in pos


def _bruhat_brute(n):
    """Transitive closure of the covering relation t*u > u."""
    perms = list(itertools.permutations(range(n)))
    leq = {(u, u) for u in perms}
    edges = []
    for u in perms:
        for i in range(n):
            for j in range(i + 1, n):
                v = compose(transposition(n, i, j), u)
                if inversions(v) == inversions(u) + 1:
                    edges.append((u, v))
    changed = True
    while changed:
        changed = False
        for (a, b) in edges:
            for (c, d) in list(leq):
                if d == a and (c, b) not in leq:
                    leq.add((c, b))
                    changed = True
    return leq


def test_bruhat_matches_brute_force_s3():
    leq = _bruhat_brute(3)
    for u in itertools.permutations(range(3)):
        for v in itertools.permutations(range(3)):
            assert bruhat_leq(u, v) == ((u, v) in leq)
