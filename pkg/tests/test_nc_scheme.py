import pytest

from ncmckay.chart_algebra import ChartElement, ChartRingId
from ncmckay.errors import GluingError, RingMismatchError, UnknownBudgetExceeded
from ncmckay.nc_scheme import (
    CechCocycle,
    DivisorData,
    NcScheme,
    SheafHom,
    cech_h1_dim,
    cech_solve_large_twist,
    chart_shifts,
    delta,
    delta_slice,
    h1_slice,
    hom_basis,
    hom_bidegree,
    monomial_bidegree,
    propagate,
    ses_maps,
    ses_middle_bases,
    ses_middle_kernel,
    ses_middle_preimage,
    ses_slice_check,
    slice_monomials,
    window_bidegrees,
)
from ncmckay.param_poly import param_ring
from ncmckay.tilting import alpha_hom, beta_hom, twist


def _overlap_constant(n, values):
    return CechCocycle(tuple(
        ChartElement.constant(ChartRingId.overlap(i, n), v) for i, v in enumerate(values)
    ))


def test_divisor_arithmetic():
    assert DivisorData.prime(0, 2) == DivisorData.zero(2)
    assert DivisorData.prime(2, 2).d == (0, 1)
    assert DivisorData.minus_prime(1, 2).at(1) == -1
    assert (DivisorData.prime(1, 2) - DivisorData.prime(1, 2)) == DivisorData.zero(2)
    with pytest.raises(IndexError):
        DivisorData.prime(3, 2)
    with pytest.raises(ValueError):
        DivisorData.zero(1) + DivisorData.zero(2)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_scheme_identities(n):
    scheme = NcScheme(n)
    assert scheme.check_commutators() == (True, None)
    assert scheme.check_birationality() == (True, None)


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        NcScheme(-1)


def test_identity_and_arrows_glue():
    for n in (1, 2):
        for i in range(n + 1):
            assert SheafHom.identity(twist(i, n)).glue_check() == (True, None)
            assert alpha_hom(i, n).glue_check() == (True, None)
            assert beta_hom(i, n).glue_check() == (True, None)


def test_perturbed_alpha_fails_on_first_overlap():
    n = 1
    alpha = alpha_hom(0, n)
    comps = list(alpha.components)
    comps[0] = comps[0] + param_ring("T", n).var(1)
    assert SheafHom(alpha.source, alpha.target, comps).glue_check() == (False, 1)


def test_global_function_extends_x0_y0():
    n = 1
    T = param_ring("T", n)
    zero = DivisorData.zero(n)
    h = propagate(0, ChartElement.monomial(ChartRingId.chart(0, n), 1, 1), zero, zero)
    x1y1 = ChartElement.monomial(ChartRingId.chart(1, n), 1, 1)
    assert h.components[1] == x1y1 - (T.var(0) + T.var(1))
    assert delta(h.components, zero, zero).is_zero()
    wrong = (h.components[0], x1y1 + T.var(0) + T.var(1))
    assert not delta(wrong, zero, zero).is_zero()


def test_propagate_refuses_non_extendable_component():
    n = 1
    with pytest.raises(GluingError):
        propagate(0, ChartElement.one(ChartRingId.chart(0, n)), DivisorData.zero(n), twist(1, n))


def test_compose_checks_types():
    n = 1
    with pytest.raises(RingMismatchError):
        alpha_hom(0, n).compose(alpha_hom(0, n))
    composite = alpha_hom(0, n).compose(beta_hom(0, n))
    assert composite.glue_check()[0]


def test_chart_shifts_for_twists():
    assert chart_shifts(DivisorData.zero(1), DivisorData((-2,))) == [(0, 0), (2, 0)]
    assert chart_shifts(DivisorData.zero(2), DivisorData.zero(2)) == [(0, 0), (0, 0), (0, 0)]


def test_slice_monomials_match_bidegree():
    for l, m, exps in slice_monomials(1, 2, 1, 3):
        assert monomial_bidegree(1, 2, l, m, exps) == (1, 3)
    assert len(slice_monomials(1, 2, 1, 3)) == 4
    assert slice_monomials(0, 1, -1, 0) == []
    assert slice_monomials(0, 1, -1, 0, overlap=True) == [(-1, 0, (0, 0))]


@pytest.mark.parametrize("n", [0, 1, 2])
def test_constants_only_at_degree_zero(n):
    zero = DivisorData.zero(n)
    basis = hom_basis(zero, zero, 0, 0)
    assert len(basis) == 1
    assert basis[0].glue_check()[0]
    assert hom_bidegree(basis[0]) == (0, 0)


def test_hom_basis_is_in_kernel_of_delta():
    n = 1
    for src, tgt in [(1, 0), (0, 1), (1, 1)]:
        for h in hom_basis(twist(src, n), twist(tgt, n), 2, 1):
            assert delta(h.components, h.source, h.target).is_zero()


@pytest.mark.parametrize("n", [1, 2])
def test_tilting_summands_have_no_first_cohomology(n):
    for a in range(n + 1):
        for b in range(n + 1):
            report = cech_h1_dim(twist(a, n), twist(b, n), 2, 1)
            assert report.total == 0
            assert all(s.stable for s in report.slices)


def test_negative_control_detects_cohomology():
    n = 1
    zero = DivisorData.zero(n)
    target = DivisorData((-2,))
    assert h1_slice(zero, target, (-1, 0)) == (1, 1)
    report = cech_h1_dim(zero, target, 2, 1)
    assert report.total >= 1
    assert any((s.p, s.w) == (-1, 0) for s in report.nonzero_slices())


def test_budget_is_enforced():
    with pytest.raises(UnknownBudgetExceeded):
        delta_slice(DivisorData.zero(2), DivisorData.zero(2), (0, 4), max_unknowns=1)


def test_solver_on_constant_cocycle():
    n = 1
    zero = DivisorData.zero(n)
    g = _overlap_constant(n, [1])
    d, hs = cech_solve_large_twist(g, zero)
    assert d == zero
    assert hs[0].is_zero()
    assert hs[1] == ChartElement.constant(ChartRingId.chart(1, n), -1)
    assert delta(hs, -d, zero) == g


def test_solver_needs_twist_for_positive_x_powers():
    n = 1
    zero = DivisorData.zero(n)
    g = CechCocycle((ChartElement.monomial(ChartRingId.overlap(0, n), 2, 0),))
    d, hs = cech_solve_large_twist(g, zero)
    assert d.d == (2,)
    assert delta(hs, -d, zero) == g


def test_solver_on_mixed_cocycle():
    n = 2
    T = param_ring("T", n)
    comps = (
        ChartElement.monomial(ChartRingId.overlap(0, n), -1, 1, T.var(2)) + 3,
        ChartElement.monomial(ChartRingId.overlap(1, n), 1, 2),
    )
    g = CechCocycle(comps)
    target = DivisorData((1, -1))
    d, hs = cech_solve_large_twist(g, target)
    assert all(v >= 0 for v in d.d)
    assert delta(hs, -d, target) == g


def test_zero_cocycle_needs_no_twist():
    n = 2
    zero = DivisorData.zero(n)
    d, hs = cech_solve_large_twist(_overlap_constant(n, [0, 0]), zero)
    assert d == zero
    assert all(h.is_zero() for h in hs)


def test_ses_maps_compose_to_zero():
    n = 2
    zero = DivisorData.zero(n)
    for j, k in [(1, 1), (1, 2), (2, 2)]:
        maps = ses_maps(zero, j, k)
        assert maps.composite().is_zero()
        assert all(h.glue_check()[0] for h in maps.first + maps.second)
    with pytest.raises(ValueError):
        ses_maps(zero, 2, 1)


@pytest.mark.parametrize("j,k", [(1, 1)])
def test_ses_is_exact_on_slices_n1(j, k):
    maps = ses_maps(DivisorData.zero(1), j, k)
    for bidegree in window_bidegrees(1, 2, 1):
        result = ses_slice_check(maps, bidegree)
        assert result.injective
        assert result.exact_middle
        assert result.euler == 0


def test_ses_is_exact_on_slices_n2():
    maps = ses_maps(DivisorData.zero(2), 1, 2)
    for bidegree in window_bidegrees(2, 1, 1):
        result = ses_slice_check(maps, bidegree)
        assert result.injective and result.exact_middle and result.euler == 0


def _off_kernel_pair(maps, bidegree):
    mid_j, _ = ses_middle_bases(maps, bidegree)
    for a in mid_j:
        if not maps.g.compose(a).is_zero():
            return a, SheafHom.zero(a.source, maps.h_prime.target)
    return None


@pytest.mark.parametrize("n,j,k,deg_xy,deg_t", [(1, 1, 1, 2, 1), (2, 1, 2, 1, 1)])
def test_ses_middle_kernel_lifts(n, j, k, deg_xy, deg_t):
    maps = ses_maps(DivisorData.zero(n), j, k)
    lifted = 0
    for bidegree in window_bidegrees(n, deg_xy, deg_t):
        for a, b in ses_middle_kernel(maps, bidegree):
            assert (maps.g.compose(a) + maps.g_prime.compose(b)).is_zero()
            r = ses_middle_preimage(maps, (a, b), bidegree)
            assert r is not None
            assert maps.h.compose(r) == a and maps.h_prime.compose(r) == b
            lifted += 1
    assert lifted > 0


def test_ses_pair_off_kernel_has_no_preimage():
    maps = ses_maps(DivisorData.zero(1), 1, 1)
    found = 0
    for bidegree in window_bidegrees(1, 2, 1):
        pair = _off_kernel_pair(maps, bidegree)
        if pair is not None:
            assert ses_middle_preimage(maps, pair, bidegree) is None
            found += 1
    assert found > 0


def test_ses_preimage_rejects_wrong_targets():
    maps = ses_maps(DivisorData.zero(2), 1, 2)
    zero = DivisorData.zero(2)
    stray = SheafHom.zero(zero, zero)
    with pytest.raises(ValueError):
        ses_middle_preimage(maps, (stray, stray), window_bidegrees(2, 1, 1)[0])


def test_sheaf_hom_json_codec():
    h = alpha_hom(1, 2)
    assert SheafHom.from_dict(h.to_dict()) == h
