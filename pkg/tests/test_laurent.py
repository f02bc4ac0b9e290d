import pytest

from klv_forge.laurent import ConventionError, HalfLaurent


def test_ring_operations():
    q = HalfLaurent.q()
    one = HalfLaurent.one()
    assert q + one == HalfLaurent.from_q({0: 1, 1: 1})
    assert (q + one) * (q - one) == HalfLaurent.from_q({2: 1, 0: -1})
    assert q - q == HalfLaurent.zero()
    assert -(q - one) == one - q
    assert 3 * q == HalfLaurent.from_q({1: 3})


def test_no_zero_coefficients_stored():
    p = HalfLaurent({2: 1, 4: 0, 0: 0})
    assert p.coeffs == {2: 1}


def test_bar_is_exponent_negation():
    q = HalfLaurent.q()
    assert q.bar() == HalfLaurent.from_q({-1: 1})
    p = HalfLaurent.q_half_power(1) + HalfLaurent.one()
    assert p.bar() == HalfLaurent.q_half_power(-1) + HalfLaurent.one()


def test_bar_is_involution():
    p = HalfLaurent({3: 2, -1: 5, 0: -7})
    assert p.bar().bar() == p


def test_exact_division():
    q = HalfLaurent.q()
    one = HalfLaurent.one()
    prod = (q + one) * (q * q - q - one)
    assert prod.exact_div(q + one) == q * q - q - one
    assert HalfLaurent.zero().exact_div(q + one) == HalfLaurent.zero()


def test_non_exact_division_is_a_convention_failure():
    q = HalfLaurent.q()
    with pytest.raises(ConventionError):
        (q + HalfLaurent.one()).exact_div(q - HalfLaurent.one())


def test_at_one_and_degree():
    p = HalfLaurent.from_q({0: 1, 1: 1})
    assert p.at_one() == 2
    assert p.degree_half() == 2
    with pytest.raises(ValueError):
        HalfLaurent.zero().degree_half()


def test_canonical_printing_ascending():
    p = HalfLaurent({2: 1, -1: -1, 0: 2})
    assert str(p) == "-q^-1/2 + 2 + q"


def test_json_round_trip():
    p = HalfLaurent({-3: 4, 1: -2})
    assert HalfLaurent.from_json(p.to_json()) == p
