from fractions import Fraction

import pytest

from ncmckay.cbh_algebra import SElement, generator_g, generator_u, generator_v, make_es
from ncmckay.coordinate_converter import w_forms_in_t
from ncmckay.mckay import (
    McKayMorphism,
    block_compatibility,
    injectivity_evidence,
    mutation_breaks_relation,
    phi,
    relation_image,
    surjectivity_evidence,
    t_images_of_s,
    verify_phi_multiplicative,
)
from ncmckay.nc_scheme import SheafHom
from ncmckay.param_poly import param_ring
from ncmckay.tilting import (
    EndoElement,
    identity,
    make_g,
    make_idempotent,
    make_u,
    make_v,
    twist,
    weight_diagonal,
)


@pytest.mark.parametrize("n", [1, 2])
def test_generators_map_to_tilting_elements(n):
    assert phi(SElement.one(n)) == identity(n)
    assert phi(generator_u(n)) == make_u(n)
    assert phi(generator_v(n)) == make_v(n)
    assert phi(generator_g(n)) == make_g(n)


@pytest.mark.parametrize("n", [1, 2])
def test_idempotents_map_to_idempotents(n):
    for i in range(n + 1):
        assert phi(make_es(i, n)) == make_idempotent(i, n)


def test_s0_maps_to_scaled_t0():
    n = 2
    assert t_images_of_s(n)[0] == param_ring("T", n).var(0).scale(Fraction(1, 3))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_relation_maps_to_zero(n):
    assert relation_image(n).is_zero()


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_relation_sides_agree_in_endomorphisms(n):
    morphism = McKayMorphism(n)
    ring = param_ring("S", n)
    g_t = morphism(generator_g(n))
    sigma = EndoElement.zero(n)
    for i in range(n + 1):
        sigma = sigma + (g_t ** i).scale(morphism.coefficient(ring.var(i)))
    u_t, v_t = morphism(generator_u(n)), morphism(generator_v(n))
    assert not sigma.is_zero()
    assert sigma == weight_diagonal(n)
    assert u_t * v_t - v_t * u_t == sigma


@pytest.mark.parametrize("n,j", [(n, j) for n in range(4) for j in range(n + 1)])
def test_mutated_parameters_break_relation(n, j):
    assert mutation_breaks_relation(n, j)


@pytest.mark.parametrize("n,j", [(0, 0), (1, 1), (2, 0), (3, 2)])
def test_mutation_residual_is_shifted_weight(n, j):
    forms = list(w_forms_in_t(n))
    t0 = param_ring("T", n).var(0)
    forms[j] = forms[j] + t0
    shift = EndoElement(n, {(j, j): SheafHom.identity(twist(j, n)).scale(t0)})
    assert relation_image(n, forms) == -shift


@pytest.mark.parametrize("n", [1, 2])
def test_phi_is_multiplicative(n):
    report = verify_phi_multiplicative(n, sample_count=5, degree_bound=2, seed=3)
    assert report.passed, report.witnesses
    assert report.details["pairs"] == 9


def test_block_compatibility():
    n = 2
    a = generator_u(n) * generator_v(n) + generator_g(n)
    for i in range(n + 1):
        for j in range(n + 1):
            assert block_compatibility(a, i, j)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_injectivity_evidence(n):
    report = injectivity_evidence(n, degree_bound=2)
    assert report.passed, report.witnesses
    assert report.to_dict()["status"] == "pass"


@pytest.mark.parametrize("n,deg_xy,deg_t", [(0, 2, 1), (1, 2, 1), (2, 2, 1), (3, 1, 1)])
def test_surjectivity_evidence_small_bounds(n, deg_xy, deg_t):
    report = surjectivity_evidence(n, deg_xy, deg_t)
    assert report.passed, report.witnesses
    assert report.details["basis_sizes"]["0,0"] >= 1


def test_surjectivity_on_selected_blocks():
    report = surjectivity_evidence(2, 1, 0, blocks=[(0, 1), (2, 0)])
    assert report.passed, report.witnesses
    assert set(report.details["basis_sizes"]) == {"0,1", "2,0"}


@pytest.mark.slow
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_injectivity_evidence_degree_four(n):
    report = injectivity_evidence(n, degree_bound=4)
    assert report.passed, report.witnesses
    assert all(dim == rank for dim, rank in report.details["slices"].values())


@pytest.mark.slow
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_surjectivity_evidence_full_bounds(n):
    report = surjectivity_evidence(n, 6, 2)
    assert report.passed, report.witnesses
    assert len(report.details["basis_sizes"]) == (n + 1) ** 2
