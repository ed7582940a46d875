from fractions import Fraction

import pytest

from ncmckay.cyclotomic import get_field
from ncmckay.errors import UnknownBudgetExceeded
from ncmckay.linalg import (
    check_budget,
    field_kernel,
    field_rank,
    in_span,
    rational_kernel,
    rational_rank,
    rational_rref,
)


def _dot(row, vector, zero):
    total = zero
    for c, v in row.items():
        if c in vector:
            total = total + v * vector[c]
    return total


def test_rational_rref_and_rank():
    rows = [{0: Fraction(1), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(4)}, {2: Fraction(3)}]
    reduced, pivots = rational_rref(rows, 3)
    assert pivots == [0, 2]
    assert reduced[0] == {0: 1, 1: 2}
    assert rational_rank(rows, 3) == 2


def test_rational_kernel_vectors_are_solutions():
    rows = [{0: Fraction(1), 1: Fraction(1), 2: Fraction(1)}, {1: Fraction(1), 3: Fraction(-1)}]
    kernel = rational_kernel(rows, 4)
    assert len(kernel) == 2
    for vec in kernel:
        for row in rows:
            assert sum(v * vec.get(c, 0) for c, v in row.items()) == 0


def test_empty_system_has_full_kernel():
    assert len(rational_kernel([], 3)) == 3
    assert rational_rank([{}], 3) == 0


def test_field_rank_with_cyclotomic_entries():
    field = get_field(3)
    z = field.zeta_pow(1)
    rows = [{0: field.one, 1: z}, {0: z, 1: z * z}]
    assert field_rank(rows, 2, field) == 1
    kernel = field_kernel(rows, 2, field)
    assert len(kernel) == 1
    for row in rows:
        assert _dot(row, kernel[0], field.zero).is_zero()


def test_in_span():
    field = get_field(4)
    i = field.zeta_pow(1)
    basis = [{0: field.one, 1: i}]
    assert in_span(basis, {0: i, 1: -field.one}, 2, field)
    assert not in_span(basis, {0: field.one, 1: field.one}, 2, field)
    assert in_span([], {}, 2, field)


def test_budget():
    check_budget(10, 10)
    check_budget(10**6, None)
    with pytest.raises(UnknownBudgetExceeded):
        check_budget(11, 10)
