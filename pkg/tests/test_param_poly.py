from fractions import Fraction

import pytest

from ncmckay.coordinate_converter import (
    change_matrix,
    coord_s_from_t,
    coord_t_from_s,
    coord_t_from_w,
    coord_w_from_t,
    s_forms_in_w,
    w_forms_in_t,
)
from ncmckay.errors import RingMismatchError
from ncmckay.param_poly import ParamPoly, param_ring


def test_arithmetic_and_degree():
    T = param_ring("T", 2)
    t0, t1 = T.var(0), T.var(1)
    p = (t0 + t1) * (t0 - t1)
    assert p == t0 * t0 - t1 * t1
    assert p.degree() == 2
    assert T.zero().degree() == -1
    assert (t0 ** 0) == 1


def test_constant_detection():
    T = param_ring("T", 1)
    assert T.constant(3).is_constant()
    assert T.constant(3).constant_value() == 3
    assert not T.var(0).is_constant()
    with pytest.raises(ValueError):
        T.var(0).constant_value()


def test_mixing_systems_raises():
    with pytest.raises(RingMismatchError):
        param_ring("T", 1).var(0) + param_ring("S", 1).var(0)


def test_substitute_and_evaluate():
    T = param_ring("T", 1)
    t0, t1 = T.var(0), T.var(1)
    p = t0 * t1 + 2
    assert p.substitute([t1, t0]) == p
    assert p.evaluate([3, Fraction(1, 3)]) == 3


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        param_ring("T", 1).var(0) ** -1


def test_json_codec():
    T = param_ring("T", 2)
    p = T.var(0).scale(Fraction(2, 3)) + T.var(2) * T.var(1) - 5
    assert ParamPoly.from_dict(T, p.to_dict()) == p


def test_w_forms_sum_to_t0():
    n = 3
    T = param_ring("T", n)
    total = T.zero()
    for w in w_forms_in_t(n):
        total = total + w
    assert total == T.var(0)


def test_w_forms_for_n_1():
    T = param_ring("T", 1)
    w0, w1 = w_forms_in_t(1)
    assert w0 == -T.var(1)
    assert w1 == T.var(0) + T.var(1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_round_trips_between_systems(n):
    T = param_ring("T", n)
    for k in range(n + 1):
        t = T.var(k)
        assert coord_t_from_w(coord_w_from_t(t)) == t
        assert coord_t_from_s(coord_s_from_t(t)) == t


@pytest.mark.parametrize("n", [1, 2, 4])
def test_s0_is_t0_over_order(n):
    S = param_ring("S", n)
    assert coord_t_from_s(S.var(0)) == param_ring("T", n).var(0).scale(Fraction(1, n + 1))


def test_s_forms_for_n_1():
    W = param_ring("W", 1)
    s0, s1 = s_forms_in_w(1)
    assert s0 == (W.var(0) + W.var(1)).scale(Fraction(1, 2))
    assert s1 == (W.var(0) - W.var(1)).scale(Fraction(1, 2))


def test_change_matrix_first_row():
    rows = change_matrix(2)
    assert rows[0][0] == Fraction(1, 3)
    assert rows[0][1].is_zero() and rows[0][2].is_zero()


def test_converters_check_the_system():
    with pytest.raises(RingMismatchError):
        coord_w_from_t(param_ring("S", 1).var(0))
