import math
from fractions import Fraction

import pytest

from klv_forge import characters as ch
from klv_forge import translation as tr
from klv_forge.arthur import AParameter, infinitesimal_character
from klv_forge.rootdata import InfChar, canonical_lambda


def _lam(left):
    left = tuple(Fraction(x) for x in left)
    return InfChar(left, tuple(-x for x in reversed(left)))


def test_datum_fully_singular_n2():
    datum = tr.make_datum(_lam((0, 0)))
    assert datum.lam1.left == (Fraction(1), Fraction(-1))
    assert datum.lam_prime.left == (Fraction(1), Fraction(-1))
    assert datum.lam_prime.regular
    assert len(datum.fibers) == 1
    assert datum.fibers[0][0] == "0,1"  # Bruhat-minimal representative first


def test_lambda_prime_always_regular():
    for left in ((2, 2, 0), (1, 1, 1), (5, 3, 3, 0)):
        datum = tr.make_datum(_lam(left))
        assert datum.lam_prime.regular
        assert datum.lam_prime.theta_fixed


def test_datum_rejects_bad_lambda():
    with pytest.raises(ValueError):
        tr.make_datum(InfChar.make((1, 0), (0, 1)))  # not theta-fixed
    with pytest.raises(ValueError):
        tr.make_datum(InfChar.make((0, 1), (-1, 0)))  # not sorted


def test_fiber_counts_are_multinomial():
    cases = {
        (0, 0): 1,
        (1, 0): 2,
        (2, 2, 0): 3,
        (1, 1, 1): 1,
        (3, 2, 1): 6,
        (2, 2, 1, 1): 6,
        (1, 1, 1, 0): 4,
    }
    for left, count in cases.items():
        datum = tr.make_datum(_lam(left))
        assert len(datum.fibers) == count, left


def test_regular_lambda_gives_singleton_fibers():
    datum = tr.make_datum(canonical_lambda(3))
    assert all(len(f) == 1 for f in datum.fibers)
    assert len(datum.fibers) == math.factorial(3)


def test_f_star_image_maps_to_representatives():
    datum = tr.make_datum(_lam((2, 2, 0)))
    image = tr.f_star_image(datum)
    block = datum.block
    assert set(image) == {p.key for p in block.params}
    for key, rep in image.items():
        assert rep == datum.fibers[datum.fiber_of(key)][0]


def test_translate_standards_collapse_fiberwise():
    datum = tr.make_datum(_lam((0, 0)))
    block = datum.block
    for p in block.params:
        v = ch.VirtualCharacter.make(block, ch.STANDARD, ch.PLAIN, {p.key: 1})
        pushed = tr.translate_character(datum, v)
        assert pushed.as_dict() == {datum.fiber_key(0): 1}
        assert pushed.basis == ch.STANDARD


def test_translate_wall_crossing_oracle_n2():
    # both regular irreducibles translate to (the singular irreducible, 0)
    datum = tr.make_datum(_lam((0, 0)))
    block = datum.block
    rep = datum.fibers[0][0]
    for p in block.params:
        v = ch.VirtualCharacter.make(
            block, ch.IRREDUCIBLE, ch.PLAIN, {p.key: 1}
        )
        pushed = tr.translate_character(datum, v)
        if p.key == rep:
            assert pushed.as_dict() == {datum.fiber_key(0): 1}
        else:
            assert pushed.as_dict() == {}


def test_translate_preserves_whittaker_tags():
    datum = tr.make_datum(_lam((1, 1, 0)))
    block = datum.block
    coeffs = {p.key: 1 for p in block.fixed}
    v = ch.VirtualCharacter.make(block, ch.STANDARD, ch.WHITTAKER, coeffs)
    pushed = tr.translate_character(datum, v)
    assert pushed.normalization == ch.WHITTAKER
    assert pushed.basis == ch.STANDARD


def test_translate_rejects_foreign_blocks():
    datum = tr.make_datum(_lam((0, 0)))
    other = canonical_lambda(2)
    from klv_forge.params import get_block

    block = get_block(other)
    v = ch.VirtualCharacter.make(
        block, ch.STANDARD, ch.PLAIN, {block.generic.key: 1}
    )
    with pytest.raises(ValueError):
        tr.translate_character(datum, v)


def test_singular_packet_matches_direct_rule_for_tempered():
    # two copies of a unitary character: the packet collapses to the
    # single surviving fiber with coefficient one
    psi = AParameter.make([(0, 0, 1, 2)])
    datum, fiber, n_table = tr.singular_packet(psi)
    assert n_table == {datum.fiber_key(fiber): 1}

    psi = AParameter.make([(0, 0, 1, 2), ("1/2", "-1/2", 1, 1)])
    datum, fiber, n_table = tr.singular_packet(psi)
    assert n_table == {datum.fiber_key(fiber): 1}


def test_singular_packet_rejects_regular_psi():
    with pytest.raises(ValueError, match="regular"):
        tr.singular_packet(AParameter.make([(0, 0, 2, 1)]))


def test_singular_lift_back_identity():
    """The regular-block identity pi(rep)~ = sum n' M~ pushes to the wall:
    the translated n-table expresses the surviving extended irreducible in
    singular extended standards with the translated coefficients."""
    from klv_forge import klv

    psi = AParameter.make([(0, 0, 1, 2), ("1/2", "-1/2", 1, 1)])
    datum, fiber, n_table = tr.singular_packet(psi)
    block = datum.block
    rep = tr.fixed_representative(datum, fiber)

    inv = klv.m_tilde_inverse(block)
    n_prime = {r: v for (r, c), v in inv.items() if c == rep and v}
    reg_standards = ch.VirtualCharacter.make(
        block, ch.STANDARD, ch.WHITTAKER, n_prime
    )
    reg_irreducible = ch.VirtualCharacter.make(
        block, ch.IRREDUCIBLE, ch.WHITTAKER, {rep: 1}
    )
    # the identity holds before translation ...
    assert ch.change_basis(block, reg_standards, ch.IRREDUCIBLE).as_dict() == {
        rep: 1
    }
    # ... and both sides push to the same singular vectors
    assert tr.translate_character(datum, reg_standards).as_dict() == n_table
    assert tr.translate_character(datum, reg_irreducible).as_dict() == {
        datum.fiber_key(fiber): 1
    }


def test_regular_route_and_translation_route_agree_on_trivial_walls():
    # a regular lambda treated as its own translation target: fibers are
    # singletons and the packet passes through unchanged
    psi = AParameter.make([("1/2", "-1/2", 1, 1), ("-1/2", "1/2", 1, 1)])
    lam = infinitesimal_character(psi)
    assert lam.regular
    datum = tr.make_datum(lam)
    assert all(len(f) == 1 for f in datum.fibers)
