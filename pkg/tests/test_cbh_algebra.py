import random

import pytest

from ncmckay.cbh_algebra import (
    SElement,
    block,
    defining_relation,
    generator_g,
    generator_u,
    generator_v,
    make_alpha_s,
    make_beta_s,
    make_es,
    pbw_monomials,
    s_graded_dim,
    s_normalize,
    specialize,
)
from ncmckay.errors import RingMismatchError
from ncmckay.mckay import random_element
from ncmckay.param_poly import param_ring


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_defining_relation_vanishes(n):
    assert defining_relation(n).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_group_relations(n):
    u, v, g = generator_u(n), generator_v(n), generator_g(n)
    field = param_ring("S", n).field
    assert g ** (n + 1) == SElement.one(n)
    assert g * u == (u * g).scale(field.zeta_pow(1))
    assert g * v == (v * g).scale(field.zeta_pow(-1))


def test_v_past_u_squared_for_n_1():
    n = 1
    S = param_ring("S", n)
    u, v = generator_u(n), generator_v(n)
    assert v * u * u == u * u * v - u.scale(S.var(0).scale(2))


def test_commutator_for_n_1():
    n = 1
    S = param_ring("S", n)
    u, v = generator_u(n), generator_v(n)
    expected = SElement(n, {(0, 0, 0): S.var(0), (0, 0, 1): S.var(1)})
    assert u * v - v * u == expected


def test_left_and_right_folds_agree():
    n = 2
    raw = [(1, ["v", "u", "g", "v", "u"]), (3, ["g^-1", "u", "u", "v"]), (-2, ["v", "v", "u", "g"])]
    assert s_normalize(raw, n, "left") == s_normalize(raw, n, "right")


def test_normalize_rejects_unknown_letters():
    with pytest.raises(ValueError):
        s_normalize([(1, ["w"])], 1)
    with pytest.raises(ValueError):
        s_normalize([(1, ["u"])], 1, fold="middle")


@pytest.mark.parametrize("n", [1, 2])
def test_associativity_on_random_elements(n):
    rng = random.Random(7)
    for _ in range(5):
        a, b, c = (random_element(n, 2, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_idempotents(n):
    es = [make_es(i, n) for i in range(n + 1)]
    total = SElement.zero(n)
    for i, e in enumerate(es):
        total = total + e
        assert e * e == e
        for j in range(n + 1):
            if j != i:
                assert (e * es[j]).is_zero()
    assert total == SElement.one(n)


@pytest.mark.parametrize("n", [1, 2])
def test_arrows_shift_idempotents(n):
    u, v = generator_u(n), generator_v(n)
    for i in range(n + 1):
        assert make_es(i, n) * u == u * make_es(i + 1, n)
        assert make_es(i + 1, n) * v == v * make_es(i, n)
        assert make_alpha_s(i, n) == make_es(i, n) * u
        assert make_beta_s(i, n) == make_es(i + 1, n) * v


def test_off_quiver_blocks_vanish():
    n = 2
    assert block(generator_u(n), 0, 0).is_zero()
    assert not block(generator_u(n), 0, 1).is_zero()


@pytest.mark.parametrize("n,degree", [(0, 3), (1, 2), (2, 4)])
def test_pbw_monomial_count(n, degree):
    assert len(pbw_monomials(n, degree)) == (degree + 1) * (n + 1)


@pytest.mark.parametrize("n,i,j,degree", [(1, 0, 0, 2), (1, 0, 1, 3), (2, 0, 1, 1), (2, 1, 1, 3), (3, 0, 2, 4)])
def test_graded_dims(n, i, j, degree):
    expected = sum(1 for a in range(degree + 1) if (2 * a - degree - (j - i)) % (n + 1) == 0)
    assert s_graded_dim(i, j, degree, n) == expected


def test_graded_dim_rejects_negative_degree():
    with pytest.raises(ValueError):
        s_graded_dim(0, 0, -1, 1)


def test_specialization():
    n = 2
    S = param_ring("S", n)
    u, v = generator_u(n), generator_v(n)
    comm = u * v - v * u
    expected = SElement(n, {(0, 0, 1): S.var(1), (0, 0, 2): S.var(2)})
    assert specialize(comm, {0: 0}) == expected
    assert specialize(comm, {0: 0, 1: 0, 2: 0}).is_zero()


def test_top_and_degree():
    n = 1
    u, v = generator_u(n), generator_v(n)
    a = u * v + u + 5
    assert a.degree() == 2
    assert a.top() == (u * v).top()
    assert SElement.zero(n).degree() == -1


def test_rejects_mixed_orders():
    with pytest.raises(RingMismatchError):
        generator_u(1) * generator_u(2)
    with pytest.raises(ValueError):
        SElement.monomial(1, -1, 0)


def test_json_codec():
    a = random_element(2, 3, random.Random(1))
    assert SElement.from_dict(a.to_dict()) == a
