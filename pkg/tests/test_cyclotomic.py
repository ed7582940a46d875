import random
from fractions import Fraction

import pytest

from ncmckay.cyclotomic import CycNumber, cyc_zeta_pow, get_field, root_of_unity_sum
from ncmckay.errors import RingMismatchError


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_zeta_has_exact_order(n):
    field = get_field(n + 1)
    assert field.zeta_pow(n + 1) == 1
    for j in range(1, n + 1):
        assert field.zeta_pow(j) != 1


def test_zeta_for_n_1_is_minus_one():
    assert cyc_zeta_pow(1, 1) == -1


def test_primitive_cube_root_satisfies_its_minimal_polynomial():
    field = get_field(3)
    z = field.zeta_pow(1)
    assert z * z + z + 1 == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_root_of_unity_sum(n):
    assert root_of_unity_sum(0, n) == n + 1
    for i in range(1, n + 1):
        assert root_of_unity_sum(i, n).is_zero()


@pytest.mark.parametrize("order", [2, 3, 4, 5])
def test_random_nonzero_elements_are_invertible(order):
    field = get_field(order)
    rng = random.Random(order)
    for _ in range(10):
        a = field.element([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(field.degree)])
        if a.is_zero():
            continue
        assert a * a.inverse() == 1
        assert (a / a) == field.one


def test_field_axioms_on_samples():
    field = get_field(5)
    rng = random.Random(7)
    for _ in range(10):
        a, b, c = (field.element([rng.randint(-3, 3) for _ in range(field.degree)]) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a - a == field.zero


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        get_field(3).zero.inverse()


def test_mixing_fields_raises():
    with pytest.raises(RingMismatchError):
        get_field(3).zeta_pow(1) + get_field(4).zeta_pow(1)


def test_negative_powers_and_rational_equality():
    field = get_field(4)
    z = field.zeta_pow(1)
    assert z ** -1 == field.zeta_pow(3)
    assert z ** 2 == -1
    assert field.rational(Fraction(1, 2)) == Fraction(1, 2)


def test_json_codec():
    field = get_field(3)
    a = field.element([Fraction(1, 3), -2])
    assert CycNumber.from_dict(field, a.to_dict()) == a
