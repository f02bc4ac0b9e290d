import random

import pytest

from klv_forge import hecke, klv
from klv_forge.hecke import basis_vector, vec_add, vec_eq, vec_scale
from klv_forge.laurent import HalfLaurent
from klv_forge.params import get_block
from klv_forge.rootdata import canonical_lambda

Q = HalfLaurent.q()
ONE = HalfLaurent.one()


@pytest.fixture(scope="module")
def b2():
    return get_block(canonical_lambda(2))


@pytest.fixture(scope="module")
def b3():
    return get_block(canonical_lambda(3))


def test_duality_rank_one():
    b = get_block(canonical_lambda(1))
    op = klv.verdier_matrix(b)
    assert op.columns == {b.generic.key: {b.generic.key: ONE}}


def test_duality_is_an_involution_and_identity_at_one(b2, b3):
    for b in (b2, b3):
        op = klv.verdier_matrix(b)
        for p in b.fixed:
            col = op.columns[p.key]
            assert vec_eq(op.apply(col), klv.unit_vector(p.key))
        assert op.specializes_to_identity()


def test_duality_matrix_n2(b2):
    op = klv.verdier_matrix(b2)
    assert op.columns[b2.generic.key] == {b2.generic.key: Q}
    assert op.columns[b2.principal.key] == {
        b2.principal.key: ONE,
        b2.generic.key: Q - ONE,
    }


def test_cbasis_n2(b2):
    table = klv.cbasis(b2)
    assert table.c_vectors[b2.generic.key] == {b2.generic.key: ONE}
    assert table.c_vectors[b2.principal.key] == {
        b2.principal.key: ONE,
        b2.generic.key: -ONE,
    }
    # the unique off-diagonal polynomial: constant, absolute value one,
    # sign pinned by the generic-multiplicity identity
    assert table.p(b2.generic.key, b2.principal.key) == ONE


def test_cbasis_n3_frozen(b3):
    table = klv.cbasis(b3)
    top = b3.principal.key
    assert table.c_vectors[top] == {
        top: ONE,
        "0,2,1": ONE,
        "1,0,2": ONE,
        "0,1,2": -ONE,
    }
    assert table.p("0,1,2", top) == ONE
    assert table.p("0,2,1", top) == ONE


def test_polynomials_unit_diagonal_and_support(b3):
    table = klv.cbasis(b3)
    for p in b3.fixed:
        assert table.p(p.key, p.key) == ONE
    for (k1, k2), poly in table.poly.items():
        if not poly.is_zero():
            assert b3.bruhat_leq(b3.by_key[k1], b3.by_key[k2])


def test_multiplicities_n3_frozen(b3):
    mults = klv.get_tables(b3).mults
    top = b3.principal.key
    col = {r: v for (r, c), v in mults.m_theta.items() if c == top}
    assert col == {"0,1,2": -1, "0,2,1": -1, "1,0,2": -1, top: 1}
    col = {r: v for (r, c), v in mults.m_tilde.items() if c == top}
    assert col == {"0,1,2": 1, "0,2,1": 1, "1,0,2": 1, top: 1}


def test_m_tilde_unitriangular_with_generic_row_one():
    for n in (1, 2, 3, 4):
        b = get_block(canonical_lambda(n))
        mults = klv.get_tables(b).mults
        for p in b.fixed:
            assert mults.m_tilde.get((p.key, p.key)) == 1
            assert mults.m_tilde.get((b.generic.key, p.key)) == 1


def test_c_theta_is_the_signed_inverse():
    b = get_block(canonical_lambda(3))
    mults = klv.get_tables(b).mults
    for (r, c), v in mults.m_theta.items():
        lt = b.by_key[c].l_int_theta - b.by_key[r].l_int_theta
        assert mults.c_theta[(c, r)] == (-1 if lt % 2 else 1) * v


def test_untwisted_generic_constituent_multiplicity_one():
    for n in (2, 3, 4):
        b = get_block(canonical_lambda(n))
        m = klv.get_tables(b).mults.m_untwisted
        for p in b.params:
            assert m.get((b.generic.key, p.key)) == 1


def test_classical_oracle_small_ranks():
    P = klv.classical_kl_oracle(2)
    assert P[(0, 1), (1, 0)] == ONE
    P = klv.classical_kl_oracle(3)
    assert all(p == ONE for p in P.values())


def test_classical_oracle_s4_singular_entries():
    P = klv.classical_kl_oracle(4)
    one_plus_q = ONE + Q
    assert P[(0, 1, 2, 3), (2, 3, 0, 1)] == one_plus_q
    assert P[(0, 1, 2, 3), (3, 1, 2, 0)] == one_plus_q
    assert P[(1, 0, 3, 2), (3, 1, 2, 0)] == one_plus_q
    assert sum(1 for p in P.values() if p == one_plus_q) == 6
    for w in {k[1] for k in P}:
        assert P[w, w] == ONE


def test_untwisted_table_matches_oracle():
    for n in (2, 3):
        b = get_block(canonical_lambda(n))
        table = klv.get_tables(b).untwisted
        oracle = klv.classical_kl_oracle(n)
        for (v, w), poly in oracle.items():
            assert table.p(
                ",".join(map(str, v)), ",".join(map(str, w))
            ) == poly


def test_pairing_rank_one():
    b = get_block(canonical_lambda(1))
    t = klv.get_tables(b)
    val = klv.pairing_eval(
        b,
        t.twisted.c_vectors[b.generic.key],
        t.dual_twisted.c_vectors[b.generic.key],
    )
    assert val == ONE


def test_pairing_orthogonality(b3):
    t = klv.get_tables(b3)
    for p1 in b3.fixed:
        for p2 in b3.fixed:
            val = klv.pairing_eval(
                b3,
                t.twisted.c_vectors[p1.key],
                t.dual_twisted.c_vectors[p2.key],
            )
            if p1 is p2:
                assert val == klv.pairing_constant(b3, p1)
            else:
                assert val.is_zero()


def test_pairing_bilinearity(b2):
    rng = random.Random(3)
    a1 = {p.key: HalfLaurent({0: rng.randint(-4, 4)}) for p in b2.fixed}
    a2 = {p.key: HalfLaurent({0: rng.randint(-4, 4)}) for p in b2.fixed}
    bvec = {p.key: HalfLaurent({2: rng.randint(-4, 4)}) for p in b2.fixed}
    lhs = klv.pairing_eval(b2, vec_add(a1, a2), bvec)
    rhs = klv.pairing_eval(b2, a1, bvec) + klv.pairing_eval(b2, a2, bvec)
    assert lhs == rhs


def test_pairing_rejects_off_block_vectors(b2):
    with pytest.raises(ValueError):
        klv.pairing_eval(b2, {"0,1,2": ONE}, {})


def test_conjugate_duality_identity(b2, b3):
    # bar<D M(x), M(dual x')> = <M(x), dual D M(dual x')>
    for b in (b2, b3):
        op = klv.verdier_matrix(b)
        dual_op = klv.get_tables(b).dual_duality
        for p1 in b.fixed:
            for p2 in b.fixed:
                lhs = klv.pairing_eval(
                    b, op.columns[p1.key], basis_vector(p2)
                ).bar()
                rhs = klv.pairing_eval(
                    b, basis_vector(p1), dual_op.columns[p2.key]
                )
                assert lhs == rhs


def test_eigenvalue_equation(b3):
    op = klv.verdier_matrix(b3)
    table = klv.cbasis(b3)
    for p in b3.fixed:
        vec = table.c_vectors[p.key]
        eig = HalfLaurent.q_half_power(-2 * p.l_int)
        assert vec_eq(op.apply(vec), vec_scale(vec, eig))
