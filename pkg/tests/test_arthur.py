from fractions import Fraction

import pytest

from klv_forge import arthur, characters
from klv_forge.arthur import (
    AParameter,
    eta_mok,
    infinitesimal_character,
    lift0,
    lift0_levi,
    orbit_param,
    packet_gl,
    twisted_standard_decomposition,
)
from klv_forge.params import get_block
from klv_forge.rootdata import canonical_lambda

NU2 = AParameter.make([(0, 0, 2, 1)])
NU3 = AParameter.make([(0, 0, 3, 1)])
TEMPERED2 = AParameter.make([("3/2", "-3/2", 1, 1), ("-3/2", "3/2", 1, 1)])


def test_summand_validation():
    with pytest.raises(ValueError):
        AParameter.make([(Fraction(1, 2), 0, 1, 1)])  # a - b not integral
    with pytest.raises(ValueError):
        AParameter.make([(0, 0, 0, 1)])


def test_conjugate_self_duality_flag():
    assert NU2.conjugate_self_dual
    assert TEMPERED2.conjugate_self_dual
    assert not AParameter.make([(1, 0, 1, 1)]).conjugate_self_dual


def test_infinitesimal_character_of_nu2():
    lam = infinitesimal_character(NU2)
    assert lam.left == (Fraction(1, 2), Fraction(-1, 2))
    assert lam.right == (Fraction(1, 2), Fraction(-1, 2))
    assert lam.regular and lam.theta_fixed and lam.integrally_dominant


def test_tempered_exponents_come_through_verbatim():
    lam = infinitesimal_character(TEMPERED2)
    assert lam.left == (Fraction(3, 2), Fraction(-3, 2))


def test_repeated_summands_give_singular_lambda():
    psi = AParameter.make([(0, 0, 1, 2)])
    lam = infinitesimal_character(psi)
    assert not lam.regular


def test_orbit_param_anchors():
    # tempered multiplicity-free lands on the generic parameter
    lam = infinitesimal_character(TEMPERED2)
    assert orbit_param(TEMPERED2) is get_block(lam).generic
    # the single-summand parameter lands on the principal one
    lam = infinitesimal_character(NU2)
    assert orbit_param(NU2) is get_block(lam).principal
    assert orbit_param(NU3).u == (2, 1, 0)


def test_orbit_param_rejects_singular():
    with pytest.raises(ValueError, match="singular"):
        orbit_param(AParameter.make([(0, 0, 1, 2)]))


def test_packet_is_a_singleton():
    for psi in (NU2, NU3, TEMPERED2):
        packet = packet_gl(psi)
        assert len(packet) == 1
        assert packet[0] is orbit_param(psi)


def test_rank_one_packet():
    psi = AParameter.make([(0, 0, 1, 1)])
    assert len(packet_gl(psi)) == 1
    assert twisted_standard_decomposition(psi) == {"0": 1}


def test_n_table_nu2():
    assert twisted_standard_decomposition(NU2) == {"1,0": 1, "0,1": -1}


def test_n_table_nu3_frozen():
    assert twisted_standard_decomposition(NU3) == {
        "2,1,0": 1,
        "0,2,1": -1,
        "1,0,2": -1,
        "0,1,2": 1,
    }


def test_n_table_tempered_is_a_delta():
    assert twisted_standard_decomposition(TEMPERED2) == {"0,1": 1}


def test_n_table_rejects_asymmetric_psi():
    with pytest.raises(ValueError, match="self-dual"):
        twisted_standard_decomposition(AParameter.make([(1, 0, 1, 1)]))


def test_eta_mok_nu2():
    res = eta_mok(NU2)
    assert res.eta_mok.as_dict() == {"1,0": 1, "0,1": -1}
    assert res.xi_psi.key == "1,0"
    assert res.to_json()["eta_abv_equals_eta_mok"] is True


def test_lift0_single_element_and_atlas_sign():
    res = eta_mok(NU3)
    block = get_block(res.lam)
    one = characters.StableCharacterG.make({block.generic.key: 1})
    lifted = lift0(block, one)
    assert lifted.normalization == characters.WHITTAKER
    assert lifted.as_dict() == {block.generic.key: 1}
    atlas = arthur.lift0_atlas(block, one)
    p = block.generic
    assert atlas.as_dict() == {
        p.key: (-1 if (p.l_int - p.l_int_theta) % 2 else 1)
    }


def test_lift0_rejects_unknown_labels():
    block = get_block(canonical_lambda(2))
    eta = characters.StableCharacterG.make({"9,9": 1})
    with pytest.raises(ValueError):
        lift0(block, eta)


def test_lift_back_recovers_the_extended_irreducible():
    for psi in (NU2, NU3, TEMPERED2):
        res = eta_mok(psi)
        block = get_block(res.lam)
        lifted = lift0(block, res.eta_mok)
        back = characters.change_basis(block, lifted, characters.IRREDUCIBLE)
        assert back.as_dict() == {res.xi_psi.key: 1}


def test_lift0_injective_by_enumeration():
    for n in (1, 2, 3, 4):
        block = get_block(canonical_lambda(n))
        images = set()
        for p in block.fixed:
            eta = characters.StableCharacterG.make({p.key: 1})
            images.add(tuple(lift0(block, eta).coeffs))
        assert len(images) == len(block.fixed)


def test_lift0_levi_trivial_factor():
    assert lift0_levi([NU3]) is orbit_param(NU3)


def test_lift0_levi_concatenates_tempered_gl1_factors():
    a = AParameter.make([("1/2", "-1/2", 1, 1)])
    b = AParameter.make([("-1/2", "1/2", 1, 1)])
    induced = lift0_levi([a, b])
    block = get_block(infinitesimal_character(AParameter.make(
        [("1/2", "-1/2", 1, 1), ("-1/2", "1/2", 1, 1)]
    )))
    assert induced is block.generic


def test_singleton_packet_of_an_induced_parameter():
    # the lift of a singleton factor packet is a single induced standard
    factor = AParameter.make([(1, 1, 1, 1), (-1, -1, 1, 1)])
    induced = lift0_levi([factor])
    assert len(packet_gl(factor)) == 1
    assert induced is orbit_param(factor)


def test_psi_json_round_trip():
    data = NU3.to_json()
    assert AParameter.from_json(data) == NU3
