import pytest

from ncmckay.chart_algebra import (
    ChartElement,
    ChartRingId,
    embed,
    leading_monomial,
    leading_part,
    normalize,
    principal_degree,
    to_chart,
    torus_weights,
    total_filtration_degree,
    transition_to_lower,
    transition_to_upper,
)
from ncmckay.errors import RingMismatchError
from ncmckay.param_poly import param_ring


def _xy(ring):
    return ChartElement.monomial(ring, 1, 0), ChartElement.monomial(ring, 0, 1)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_commutator_is_t0_in_every_chart(n):
    t0 = param_ring("T", n).var(0)
    for i in range(n + 1):
        x, y = _xy(ChartRingId.chart(i, n))
        assert x * y - y * x == t0


def test_reordering_y_past_x_squared():
    ring = ChartRingId.chart(0, 1)
    t0 = param_ring("T", 1).var(0)
    x, y = _xy(ring)
    assert y * x * x == x * x * y - x.scale(t0 * 2)


def test_inverse_commutation_in_overlap():
    ring = ChartRingId.overlap(0, 1)
    t0 = param_ring("T", 1).var(0)
    y = ChartElement.monomial(ring, 0, 1)
    x_inv = ChartElement.monomial(ring, -1, 0)
    assert y * x_inv == ChartElement.monomial(ring, -1, 1) + ChartElement.monomial(ring, -2, 0, t0)


def test_x1_y1_in_lower_generators():
    T = param_ring("T", 1)
    x1, y1 = _xy(ChartRingId.chart(1, 1))
    lower = transition_to_lower(x1 * y1)
    ring = ChartRingId.overlap(0, 1)
    assert lower == ChartElement.monomial(ring, 1, 1) + (T.var(0) + T.var(1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_transitions_are_inverse(n):
    T = param_ring("T", n)
    for i in range(1, n + 1):
        chart = ChartRingId.chart(i, n)
        x, y = _xy(chart)
        e = x * x * y + y.scale(T.var(i)) + 3
        upper = embed(e, ChartRingId.overlap(i - 1, n, i))
        assert transition_to_upper(transition_to_lower(e)) == upper


@pytest.mark.parametrize("n", [1, 2])
def test_transition_preserves_torus_weight(n):
    for i in range(1, n + 1):
        a_up, b_up = torus_weights(i, n)
        a, b = torus_weights(i - 1, n)
        for l, m in [(1, 0), (0, 1), (2, 1)]:
            image = transition_to_lower(ChartElement.monomial(ChartRingId.chart(i, n), l, m))
            expected = a_up * l + b_up * m
            for (p, q), coeff in image.terms.items():
                for exps, _ in coeff:
                    assert a * p + b * q + 2 * sum(exps) == expected


def test_torus_weights():
    assert torus_weights(0, 2) == (-1, 3)
    assert torus_weights(2, 2) == (3, -1)
    assert torus_weights(0, 0) == (1, 1)


def test_chart_rejects_inverse_generators():
    with pytest.raises(RingMismatchError):
        ChartElement.monomial(ChartRingId.chart(0, 1), -1, 0)
    with pytest.raises(RingMismatchError):
        normalize([(1, ["x^-1"])], ChartRingId.chart(0, 1))


def test_to_chart_requires_chart_generators():
    ring = ChartRingId.overlap(0, 1)
    assert to_chart(ChartElement.monomial(ring, 2, 1), 0) == ChartElement.monomial(ChartRingId.chart(0, 1), 2, 1)
    with pytest.raises(RingMismatchError):
        to_chart(ChartElement.monomial(ring, -1, 0), 0)


def test_normalize_matches_multiplication():
    ring = ChartRingId.chart(0, 2)
    x, y = _xy(ring)
    assert normalize([(1, ["y", "x", "y"]), (2, ["x"])], ring) == y * x * y + x.scale(2)


def test_gradings():
    ring = ChartRingId.chart(0, 1)
    x, y = _xy(ring)
    e = x * x * y + x.scale(5)
    assert principal_degree(e) == 1
    assert principal_degree(x + y) is None
    assert total_filtration_degree(e) == 3
    assert leading_part(e) == x * x * y
    assert leading_monomial(e)[0] == (2, 1)
    assert leading_part(x + y, (2, 1)) == x


def test_unknown_ring_kind():
    with pytest.raises(ValueError):
        ChartRingId("patch", 0, 1, 0)
    with pytest.raises(ValueError):
        ChartRingId.overlap(1, 1)


def test_json_codec():
    ring = ChartRingId.overlap(0, 2, 1)
    T = param_ring("T", 2)
    e = ChartElement.monomial(ring, 1, -2, T.var(1)) + 4
    assert ChartElement.from_dict(e.to_dict()) == e
