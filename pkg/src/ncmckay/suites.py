"""
Verification Suites Module

Every check verifies one identity or property of the construction and
carries the statement it verifies as its citation. Checks are grouped in
the suites scheme, sheaves, tilting, cbh and iso.

A check function receives the VerificationContext and returns
(passed, detail, witness).
"""

import logging
import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import cbh_algebra as cbh
from . import mckay
from . import nc_scheme as ncs
from . import tilting as til
from .chart_algebra import ChartElement, ChartRingId, embed
from .linalg import in_span
from .param_poly import param_ring

logger = logging.getLogger(__name__)

SUITE_NAMES = ("scheme", "sheaves", "tilting", "cbh", "iso")

Outcome = Tuple[bool, Dict[str, Any], Optional[Any]]


@dataclass
class VerificationContext:
    n: int
    deg_xy: int = 6
    deg_t: int = 3
    max_unknowns: int = ncs.DEFAULT_MAX_UNKNOWNS
    phi_samples: int = 50
    phi_degree: int = 4
    solver_samples: int = 100
    seed: int = 0

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}:{self.n}")

    def bounds(self) -> Dict[str, int]:
        return {"xy": self.deg_xy, "t": self.deg_t}


@dataclass
class Check:
    suite: str
    name: str
    citation: str
    fn: Callable[[VerificationContext], Outcome]
    min_n: int = 0

    @property
    def full_name(self) -> str:
        return f"{self.suite}.{self.name}"


REGISTRY: Dict[str, List[Check]] = {name: [] for name in SUITE_NAMES}


def check(suite: str, name: str, citation: str, min_n: int = 0):
    def register(fn: Callable[[VerificationContext], Outcome]):
        REGISTRY[suite].append(Check(suite, name, citation, fn, min_n))
        return fn
    return register


def checks_for(suite: str, n: int) -> List[Check]:
    """Checks of a suite ("all" for every suite) applicable at this n."""
    if suite == "all":
        selected = [c for name in SUITE_NAMES for c in REGISTRY[name]]
    elif suite in REGISTRY:
        selected = list(REGISTRY[suite])
    else:
        raise KeyError(f"Unknown suite {suite!r}; expected one of {SUITE_NAMES + ('all',)}")
    return [c for c in selected if n >= c.min_n]


def _first_failure(items: Sequence[Tuple[Any, bool]]) -> Optional[Any]:
    return next((label for label, ok in items if not ok), None)


def _outcome(items: Sequence[Tuple[Any, bool]], detail: Optional[Dict[str, Any]] = None) -> Outcome:
    witness = _first_failure(items)
    return witness is None, dict(detail or {}, checked=len(items)), witness


# -- scheme -----------------------------------------------------------------------


@check("scheme", "commutator", "x_i y_i - y_i x_i = t_0 in every chart and after each transition")
def _scheme_commutator(ctx: VerificationContext) -> Outcome:
    ok, index = ncs.NcScheme(ctx.n).check_commutators()
    return ok, {}, None if ok else {"chart": index}


@check("scheme", "overlap-commutators",
       "y_i y_{i+1} - y_{i+1} y_i = t_0 y_{i+1}^2 and x_i x_{i+1} - x_{i+1} x_i = t_0 x_i^2", min_n=1)
def _scheme_overlap_commutators(ctx: VerificationContext) -> Outcome:
    scheme = ncs.NcScheme(ctx.n)
    t0 = scheme.t(0)
    items = []
    for i, ring in enumerate(scheme.overlaps):
        x, y = embed(scheme.x(i), ring), embed(scheme.y(i), ring)
        big_x, big_y = scheme.gluing(i)
        items.append(((i, "y"), y * big_y - big_y * y == (big_y * big_y).scale(t0)))
        items.append(((i, "x"), x * big_x - big_x * x == (x * x).scale(t0)))
    return _outcome(items)


@check("scheme", "birationality", "x_i x_i^-1 = 1 and y_{i+1} x_i = 1 in every overlap")
def _scheme_birationality(ctx: VerificationContext) -> Outcome:
    ok, index = ncs.NcScheme(ctx.n).check_birationality()
    return ok, {}, None if ok else {"overlap": index}


@check("scheme", "commutative-specialization", "at t_0 = 0 every chart algebra is commutative")
def _scheme_commutative(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    T = param_ring("T", n)
    images = [T.zero()] + [T.var(k) for k in range(1, n + 1)]
    items = []
    for i in range(n + 1):
        chart = ChartRingId.chart(i, n)
        a = ChartElement.monomial(chart, 2, 1) + ChartElement.monomial(chart, 0, 1).scale(T.var(i))
        b = ChartElement.monomial(chart, 1, 2)
        bracket = a * b - b * a
        specialized = ChartElement(chart, {mono: c.substitute(images) for mono, c in bracket.terms.items()})
        items.append((i, specialized.is_zero() and not bracket.is_zero()))
    return _outcome(items)


# -- sheaves ----------------------------------------------------------------------


def _span_contains(basis: Sequence[ncs.SheafHom], h: ncs.SheafHom) -> bool:
    index: Dict[Any, int] = {}
    rows = []
    for hom in list(basis) + [h]:
        rows.append({index.setdefault(k, len(index)): v for k, v in hom.chart0_vector().items()})
    field_ = param_ring("T", h.n).field
    return in_span(rows[:-1], rows[-1], len(index), field_)


@check("sheaves", "glue-check", "identity and alpha_{0,1} glue; alpha_{0,1} with m_0 = x_0 + t_1 does not",
       min_n=1)
def _sheaves_glue(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    items = []
    for i in range(n + 1):
        items.append((("identity", i), ncs.SheafHom.identity(til.twist(i, n)).glue_check()[0]))
    alpha = til.alpha_hom(0, n)
    items.append(("alpha_01", alpha.glue_check() == (True, None)))
    bad = list(alpha.components)
    bad[0] = bad[0] + param_ring("T", n).var(1)
    perturbed = ncs.SheafHom(alpha.source, alpha.target, bad)
    items.append(("perturbed", perturbed.glue_check() == (False, 1)))
    return _outcome(items)


@check("sheaves", "global-function", "x_0 y_0 extends to the global function with chart-1 part x_1 y_1 - t_0 - t_1",
       min_n=1)
def _sheaves_global_function(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    zero = ncs.DivisorData.zero(n)
    chart0 = ChartRingId.chart(0, n)
    h = ncs.propagate(0, ChartElement.monomial(chart0, 1, 1), zero, zero)
    T = param_ring("T", n)
    expected = ChartElement.monomial(ChartRingId.chart(1, n), 1, 1) - (T.var(0) + T.var(1))
    cocycle = ncs.delta(h.components, zero, zero)
    items = [("delta", cocycle.is_zero()), ("chart1", h.components[1] == expected)]
    return _outcome(items, {"chart1": repr(h.components[1])})


@check("sheaves", "hom-basis", "Hom = Ker(Delta): constants at bounds (0, 0); alpha_{0,1}, beta_{1,0} lie in the kernel",
       min_n=1)
def _sheaves_hom_basis(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    zero = ncs.DivisorData.zero(n)
    constants = ncs.hom_basis(zero, zero, 0, 0, ctx.max_unknowns)
    into_r = ncs.hom_basis(til.twist(1, n), zero, 2, 1, ctx.max_unknowns)
    out_of_r = ncs.hom_basis(zero, til.twist(1, n), 2, 1, ctx.max_unknowns)
    kernel_ok = all(ncs.delta(h.components, h.source, h.target).is_zero() for h in into_r + out_of_r)
    items = [
        ("constants", len(constants) == 1),
        ("alpha_01", _span_contains(into_r, til.alpha_hom(0, n))),
        ("beta_10", _span_contains(out_of_r, til.beta_hom(0, n))),
        ("delta-kernel", kernel_ok),
    ]
    return _outcome(items, {"dims": [len(constants), len(into_r), len(out_of_r)]})


@check("sheaves", "hom-composition", "composites of Hom basis morphisms glue and lie in the Hom basis span",
       min_n=1)
def _sheaves_composition(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    zero, minus = ncs.DivisorData.zero(n), til.twist(1, n)
    first = ncs.hom_basis(minus, zero, 1, 1, ctx.max_unknowns)
    second = ncs.hom_basis(zero, minus, 1, 1, ctx.max_unknowns)
    target = ncs.hom_basis(minus, minus, 2, 2, ctx.max_unknowns)
    items = []
    for a_index, a in enumerate(second):
        for b_index, b in enumerate(first):
            composite = a.compose(b)
            ok = composite.glue_check()[0] and _span_contains(target, composite)
            items.append(((a_index, b_index), ok))
    return _outcome(items)


@check("sheaves", "tilting-vanishing", "H^1(R(-D_a), R(-D_b)) = 0 on every slice for all a, b")
def _sheaves_tilting_vanishing(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    items = []
    slices = 0
    for a in range(n + 1):
        for b in range(n + 1):
            report = ncs.cech_h1_dim(til.twist(a, n), til.twist(b, n), ctx.deg_xy, ctx.deg_t, ctx.max_unknowns)
            slices += len(report.slices)
            bad = report.nonzero_slices()
            items.append(({"a": a, "b": b, "slices": [s.to_dict() for s in bad]}, not bad))
    return _outcome(items, {"slices": slices})


@check("sheaves", "negative-control", "with d'_i = d_i - 2 the first Cech group no longer vanishes", min_n=1)
def _sheaves_negative_control(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    zero = ncs.DivisorData.zero(n)
    target = ncs.DivisorData.prime(1, n) + ncs.DivisorData.prime(1, n)
    report = ncs.cech_h1_dim(zero, -target, min(ctx.deg_xy, 2), min(ctx.deg_t, 1), ctx.max_unknowns)
    nonzero = [s.to_dict() for s in report.nonzero_slices()]
    return bool(nonzero), {"nonzero_slices": nonzero}, None if nonzero else report.to_dict()


def random_cocycle(n: int, rng: random.Random, max_terms: int = 3) -> ncs.CechCocycle:
    T = param_ring("T", n)
    comps = []
    for i in range(n):
        ring = ChartRingId.overlap(i, n)
        g = ChartElement.zero(ring)
        for _ in range(rng.randint(0, max_terms)):
            coeff = T.constant(rng.choice([-2, -1, 1, 2]))
            if rng.random() < 0.3:
                coeff = coeff * T.var(rng.randrange(n + 1))
            g = g + ChartElement.monomial(ring, rng.randint(-2, 2), rng.randint(0, 2), coeff)
        comps.append(g)
    return ncs.CechCocycle(tuple(comps))


@check("sheaves", "large-twist-solver", "the forward sweep solves Delta(h) = g for R(-Sum d_i D_i), d_i large",
       min_n=1)
def _sheaves_solver(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    rng = ctx.rng("solver")
    items = []
    zero = ncs.DivisorData.zero(n)
    d, hs = ncs.cech_solve_large_twist(ncs.CechCocycle(tuple(
        ChartElement.zero(ChartRingId.overlap(i, n)) for i in range(n))), zero)
    items.append(("zero", d == zero and all(h.is_zero() for h in hs)))
    for sample in range(ctx.solver_samples):
        g = random_cocycle(n, rng)
        target = ncs.DivisorData(tuple(rng.randint(-1, 1) for _ in range(n)))
        d, hs = ncs.cech_solve_large_twist(g, target)
        items.append((sample, ncs.delta(hs, -d, target) == g))
    return _outcome(items)


def _ses_preimages_hold(maps: "ncs.SesMaps", bidegree, max_unknowns) -> bool:
    """Every kernel pair of the middle slice lifts to R(D); a pair off the kernel does not."""
    for pair in ncs.ses_middle_kernel(maps, bidegree, max_unknowns):
        if ncs.ses_middle_preimage(maps, pair, bidegree, max_unknowns) is None:
            return False
    mid_j, _ = ncs.ses_middle_bases(maps, bidegree, max_unknowns)
    for a in mid_j:
        if not maps.g.compose(a).is_zero():
            stray = (a, ncs.SheafHom.zero(a.source, maps.h_prime.target))
            return ncs.ses_middle_preimage(maps, stray, bidegree, max_unknowns) is None
    return True


@check("sheaves", "ses", "0 -> R(D) -> R(D+D_j) + R(D+D_k) -> R(D+D_j+D_k) -> 0 is exact on global sections",
       min_n=1)
def _sheaves_ses(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    zero = ncs.DivisorData.zero(n)
    bidegrees = ncs.window_bidegrees(n, min(ctx.deg_xy, 2), min(ctx.deg_t, 1))
    items = []
    for j in range(1, n + 1):
        for k in range(j, n + 1):
            maps = ncs.ses_maps(zero, j, k)
            glued = all(h.glue_check()[0] for h in maps.first + maps.second)
            items.append(((j, k, "maps"), glued and maps.composite().is_zero()))
            for bidegree in bidegrees:
                result = ncs.ses_slice_check(maps, bidegree, ctx.max_unknowns)
                ok = result.injective and result.exact_middle and result.euler == 0
                items.append(((j, k, result.to_dict()), ok))
                items.append(((j, k, "preimage", bidegree),
                              _ses_preimages_hold(maps, bidegree, ctx.max_unknowns)))
    return _outcome(items, {"bidegrees": len(bidegrees)})


# -- tilting ----------------------------------------------------------------------


@check("tilting", "alpha-beta-glue", "every alpha_{i,i+1} and beta_{i+1,i} is a morphism of divisorial sheaves")
def _tilting_glue(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    items = []
    for i in range(n + 1):
        items.append((("alpha", i), til.alpha_hom(i, n).glue_check()[0]))
        items.append((("beta", i), til.beta_hom(i, n).glue_check()[0]))
    return _outcome(items)


@check("tilting", "idempotents", "e_i e_j = delta_ij e_i and Sum_i e_i = 1 in End(T)")
def _tilting_idempotents(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    es = [til.make_idempotent(i, n) for i in range(n + 1)]
    items = []
    for i in range(n + 1):
        for j in range(n + 1):
            expected = es[i] if i == j else til.EndoElement.zero(n)
            items.append(((i, j), es[i] * es[j] == expected))
    total = til.EndoElement.zero(n)
    for e in es:
        total = total + e
    items.append(("sum", total == til.identity(n)))
    return _outcome(items)


@check("tilting", "quiver-shape", "e_i u e_j = 0 unless j = i+1 and e_i v e_j = 0 unless j = i-1 (mod n+1)")
def _tilting_quiver(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    u, v = til.make_u(n), til.make_v(n)
    items = []
    for i in range(n + 1):
        for j in range(n + 1):
            ei, ej = til.make_idempotent(i, n), til.make_idempotent(j, n)
            items.append(((i, j, "u"), (ei * u * ej).is_zero() == (j != (i + 1) % (n + 1))))
            items.append(((i, j, "v"), (ei * v * ej).is_zero() == (j != (i - 1) % (n + 1))))
    return _outcome(items)


def _xy_const(n: int, const) -> ChartElement:
    chart0 = ChartRingId.chart(0, n)
    return ChartElement.monomial(chart0, 1, 1) + ChartElement.constant(chart0, const)


def _partial_t(n: int, i: int):
    """(i-1) t_0 + t_1 + ... + t_i"""
    T = param_ring("T", n)
    total = T.var(0).scale(i - 1)
    for l in range(1, i + 1):
        total = total + T.var(l)
    return total


@check("tilting", "matrix-form", "u|R_0 has x_0 and x_0 y_0 + (i-1) t_0 + t_1 + ... + t_i above the diagonal; "
       "v|R_0 has y_0, 1, ..., 1 below it")
def _tilting_matrix(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    if n == 0:
        mu, mv = til.matrix_form_chart0(til.make_u(0)), til.matrix_form_chart0(til.make_v(0))
        chart0 = ChartRingId.chart(0, 0)
        return _outcome([("u", mu[0][0] == ChartElement.monomial(chart0, 1, 0)),
                         ("v", mv[0][0] == ChartElement.monomial(chart0, 0, 1))])
    mu = til.matrix_form_chart0(til.make_u(n))
    mv = til.matrix_form_chart0(til.make_v(n))
    chart0 = ChartRingId.chart(0, n)
    one = ChartElement.one(chart0)
    items = []
    for i in range(n + 1):
        for j in range(n + 1):
            if j == (i + 1) % (n + 1):
                expected_u = ChartElement.monomial(chart0, 1, 0) if i == 0 else _xy_const(n, _partial_t(n, i))
            else:
                expected_u = ChartElement.zero(chart0)
            if i == (j + 1) % (n + 1):
                expected_v = ChartElement.monomial(chart0, 0, 1) if j == 0 else one
            else:
                expected_v = ChartElement.zero(chart0)
            items.append(((i, j, "u"), mu[i][j] == expected_u))
            items.append(((i, j, "v"), mv[i][j] == expected_v))
    return _outcome(items, {"u_bottom_left": repr(mu[n][0])})


@check("tilting", "uv-diagonal", "u v|R_0 = diag(x_0 y_0, x_0 y_0 + t_1, ..., x_0 y_0 + (i-1) t_0 + t_1 + ... + t_i)")
def _tilting_uv(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    m = til.matrix_form_chart0(til.make_u(n) * til.make_v(n))
    chart0 = ChartRingId.chart(0, n)
    items = []
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j:
                expected = ChartElement.zero(chart0)
            elif i == 0:
                expected = ChartElement.monomial(chart0, 1, 1)
            else:
                expected = _xy_const(n, _partial_t(n, i))
            items.append(((i, j), m[i][j] == expected))
    return _outcome(items, {"diagonal": [repr(m[i][i]) for i in range(n + 1)]})


@check("tilting", "uv-commutator", "u v - v u = diag(-(n-1) t_0 - t_1 - ... - t_n, t_0 + t_1, ..., t_0 + t_n)")
def _tilting_commutator(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    u, v = til.make_u(n), til.make_v(n)
    commutator = u * v - v * u
    m = til.matrix_form_chart0(commutator)
    detail = {"diagonal": "diag(" + ", ".join(repr(m[i][i]) for i in range(n + 1)) + ")"}
    return _outcome([("commutator", commutator == til.weight_diagonal(n))], detail)


@check("tilting", "group-action", "g^(n+1) = 1, g^j != 1 for 0 < j <= n, g u = zeta u g, g v = zeta^-1 v g")
def _tilting_group(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    g, u, v = til.make_g(n), til.make_u(n), til.make_v(n)
    zeta = param_ring("T", n).field.zeta_pow
    items = [("order", g ** (n + 1) == til.identity(n))]
    for j in range(1, n + 1):
        items.append((("power", j), g ** j != til.identity(n)))
    items.append(("gu", g * u == (u * g).scale(zeta(1))))
    items.append(("gv", g * v == (v * g).scale(zeta(-1))))
    return _outcome(items)


@check("tilting", "xyz", "(x)_n = x_n, (y)_0 = y_0, (z)_0 = x_0 y_0 and "
       "(x)_0 = x_0 Prod_i (x_0 y_0 + (i-1) t_0 + t_1 + ... + t_i)")
def _tilting_xyz(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    x, y, z = (e.block(0, 0) for e in til.make_xyz(0, n))
    chart0, chart_n = ChartRingId.chart(0, n), ChartRingId.chart(n, n)
    expected_x0 = ChartElement.monomial(chart0, 1, 0)
    for i in range(1, n + 1):
        expected_x0 = expected_x0 * _xy_const(n, _partial_t(n, i))
    items = [
        ("x_n", x.components[n] == ChartElement.monomial(chart_n, 1, 0)),
        ("y_0", y.components[0] == ChartElement.monomial(chart0, 0, 1)),
        ("z_0", z.components[0] == ChartElement.monomial(chart0, 1, 1)),
        ("x_0", x.components[0] == expected_x0),
    ]
    return _outcome(items)


@check("tilting", "order-independence", "the factors x_0 y_0 + c_i of (x)_0 pairwise commute")
def _tilting_order(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    factors = [_xy_const(n, _partial_t(n, i)) for i in range(1, n + 1)]
    items = []
    for a in range(len(factors)):
        for b in range(a + 1, len(factors)):
            items.append(((a + 1, b + 1), factors[a] * factors[b] == factors[b] * factors[a]))
    return _outcome(items)


@check("tilting", "leading-relation", "x y and z^(n+1) have the same top part for the weights (1-n, n+1)")
def _tilting_leading(ctx: VerificationContext) -> Outcome:
    return _outcome([("chart0", til.leading_relation_holds(ctx.n))])


def random_path(n: int, rng: random.Random, max_length: int = 6) -> Tuple[int, Tuple[til.Generator, ...], int]:
    """A random composable word; returns (start index, word, end index)."""
    start = rng.randrange(n + 1)
    current = start
    word = []
    for _ in range(rng.randint(1, max_length)):
        kind = rng.choice(["alpha", "beta", "z", "x", "y"])
        if kind == "alpha":
            word.append(("alpha", current))
            current = (current + 1) % (n + 1)
        elif kind == "beta":
            current = (current - 1) % (n + 1)
            word.append(("beta", current))
        else:
            word.append((kind, current))
    return start, tuple(word), current


@check("tilting", "reduction", "the division algorithm writes z, alpha beta and random products in the generators")
def _tilting_reduction(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    rng = ctx.rng("reduction")
    items = []
    samples = [(0, (("z", 0),), 0), (0, (("alpha", 0), ("beta", 0)), 0)]
    samples += [random_path(n, rng, 4 if n >= 3 else 6) for _ in range(8)]
    for start, word, end in samples:
        h = til.word_element(word, n).block(start, end)
        reduction = til.reduce_to_generators(h)
        items.append(((start, word), reduction.complete and reduction.evaluate(n) == h))
    return _outcome(items)


# -- cbh --------------------------------------------------------------------------


@check("cbh", "rewriting", "g u = zeta u g, g v = zeta^-1 v g, v u = u v - Sum_i s_i g^i, g^(n+1) = 1")
def _cbh_rewriting(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    S = param_ring("S", n)
    zeta = S.field.zeta_pow
    u, v, g = cbh.generator_u(n), cbh.generator_v(n), cbh.generator_g(n)
    sigma = cbh.SElement(n, {(0, 0, i): S.var(i) for i in range(n + 1)})
    items = [
        ("gu", g * u == (u * g).scale(zeta(1))),
        ("gv", g * v == (v * g).scale(zeta(-1))),
        ("vu", v * u == u * v - sigma),
        ("order", g ** (n + 1) == cbh.SElement.one(n)),
        ("relation", cbh.defining_relation(n).is_zero()),
    ]
    return _outcome(items)


def _random_word(rng: random.Random, length: int) -> List[str]:
    return [rng.choice(["u", "v", "g", "g^-1"]) for _ in range(length)]


@check("cbh", "confluence", "left and right reduction orders reach the same normal form")
def _cbh_confluence(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    rng = ctx.rng("confluence")
    items = []
    for sample in range(10):
        word = _random_word(rng, rng.randint(2, 6))
        left = cbh.s_normalize([(1, word)], n, fold="left")
        right = cbh.s_normalize([(1, word)], n, fold="right")
        items.append((" ".join(word), left == right))
    return _outcome(items)


@check("cbh", "associativity", "(a b) c = a (b c) on random triples")
def _cbh_associativity(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    rng = ctx.rng("associativity")
    items = []
    for sample in range(10):
        a, b, c = (mckay.random_element(n, 2, rng) for _ in range(3))
        items.append((sample, (a * b) * c == a * (b * c)))
    return _outcome(items)


@check("cbh", "idempotents", "e_i e_j = delta_ij e_i, Sum_i e_i = 1 and e_i u = u e_{i+1}")
def _cbh_idempotents(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    es = [cbh.make_es(i, n) for i in range(n + 1)]
    u = cbh.generator_u(n)
    items = []
    for i in range(n + 1):
        for j in range(n + 1):
            items.append(((i, j), es[i] * es[j] == (es[i] if i == j else cbh.SElement.zero(n))))
        items.append((("shift", i), es[i] * u == u * es[(i + 1) % (n + 1)]))
    total = cbh.SElement.zero(n)
    for e in es:
        total = total + e
    items.append(("sum", total == cbh.SElement.one(n)))
    return _outcome(items)


@check("cbh", "arrow-relations", "u = Sum alpha_{i,i+1}; alpha beta = u v e_i; beta alpha = v u e_{i+1}; "
       "the (n+1)-fold arrow products are u^(n+1) e_i and v^(n+1) e_i")
def _cbh_arrows(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    u, v = cbh.generator_u(n), cbh.generator_v(n)
    items = []
    total = cbh.SElement.zero(n)
    for i in range(n + 1):
        alpha, beta = cbh.make_alpha_s(i, n), cbh.make_beta_s(i, n)
        total = total + alpha
        e_i, e_next = cbh.make_es(i, n), cbh.make_es((i + 1) % (n + 1), n)
        items.append((("alpha-beta", i), alpha * beta == u * v * e_i))
        items.append((("beta-alpha", i), beta * alpha == v * u * e_next))
        around_u = cbh.SElement.one(n)
        around_v = cbh.SElement.one(n)
        for s in range(n + 1):
            around_u = around_u * cbh.make_alpha_s((i + s) % (n + 1), n)
            around_v = around_v * cbh.make_beta_s((i - 1 - s) % (n + 1), n)
        items.append((("alpha-cycle", i), around_u == u ** (n + 1) * e_i))
        items.append((("beta-cycle", i), around_v == v ** (n + 1) * e_i))
        for j in range(n + 1):
            if j != (i + 1) % (n + 1):
                items.append((("block-zero", i, j), cbh.block(u, i, j).is_zero()))
    items.append(("u-sum", total == u))
    return _outcome(items)


@check("cbh", "graded-dims", "the degree-d PBW slice has (d+1)(n+1) monomials and e_i S_d e_j has the expected rank")
def _cbh_graded(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    items = []
    dims = {}
    for d in range(4):
        items.append((("pbw", d), len(cbh.pbw_monomials(n, d)) == (d + 1) * (n + 1)))
        for i in range(n + 1):
            for j in range(n + 1):
                expected = sum(1 for a in range(d + 1) if (a - (d - a) - (j - i)) % (n + 1) == 0)
                value = cbh.s_graded_dim(i, j, d, n)
                dims[f"{i},{j},{d}"] = value
                items.append(((i, j, d), value == expected))
    return _outcome(items, {"dims": dims})


@check("cbh", "leading-terms", "e S e has no zero divisors: top(a b) = top(top(a) top(b)) and a b != 0")
def _cbh_leading(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    rng = ctx.rng("leading")
    items = []
    for sample in range(8):
        a = cbh.block(mckay.random_element(n, 3, rng), 0, 0)
        b = cbh.block(mckay.random_element(n, 3, rng), 0, 0)
        if not a or not b:
            continue
        product = a * b
        degree = a.degree() + b.degree()
        top = (a.top() * b.top()).homogeneous_part(degree)
        items.append((sample, bool(product) and product.homogeneous_part(degree) == top))
    return _outcome(items)


@check("cbh", "commutative-specialization", "at s_0 = 0 the elements x, y, z of e S e commute")
def _cbh_commutative(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    x, y, z = cbh.make_xyz_s(0, n)
    items = []
    for label, (a, b) in {"xy": (x, y), "xz": (x, z), "yz": (y, z)}.items():
        items.append((label, cbh.specialize(a * b - b * a, {0: 0}).is_zero()))
    return _outcome(items)


# -- iso --------------------------------------------------------------------------


@check("iso", "unit-and-group", "phi(1) = 1, phi(e_i) = e_i and phi(g)^(n+1) = 1")
def _iso_unit(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    phi = mckay.get_phi(n)
    items = [("one", phi(cbh.SElement.one(n)) == til.identity(n))]
    items.append(("g-order", phi(cbh.generator_g(n)) ** (n + 1) == til.identity(n)))
    for i in range(n + 1):
        items.append((("e", i), phi(cbh.make_es(i, n)) == til.make_idempotent(i, n)))
    return _outcome(items)


@check("iso", "relation", "phi(u v - v u - Sum_i s_i g^i) = 0")
def _iso_relation(ctx: VerificationContext) -> Outcome:
    return _outcome([("relation", mckay.relation_image(ctx.n).is_zero())])


@check("iso", "mutation", "perturbing any w_j breaks phi on the defining relation")
def _iso_mutation(ctx: VerificationContext) -> Outcome:
    return _outcome([(j, mckay.mutation_breaks_relation(ctx.n, j)) for j in range(ctx.n + 1)])


@check("iso", "multiplicative", "phi(a b) = phi(a) phi(b)")
def _iso_multiplicative(ctx: VerificationContext) -> Outcome:
    report = mckay.verify_phi_multiplicative(ctx.n, ctx.phi_samples, ctx.phi_degree, ctx.seed)
    return report.passed, report.details, report.witnesses[0] if report.witnesses else None


@check("iso", "block-compatibility", "phi(e_i a e_j) = e_i phi(a) e_j")
def _iso_blocks(ctx: VerificationContext) -> Outcome:
    n = ctx.n
    rng = ctx.rng("blocks")
    items = []
    for sample in range(4):
        a = mckay.random_element(n, 2, rng)
        for i in range(n + 1):
            for j in range(n + 1):
                items.append(((sample, i, j), mckay.block_compatibility(a, i, j)))
    return _outcome(items)


@check("iso", "injectivity", "phi(x, y, z) = (x, y, z), x y = z^(n+1) on top parts, phi injective on graded slices")
def _iso_injectivity(ctx: VerificationContext) -> Outcome:
    report = mckay.injectivity_evidence(ctx.n, ctx.phi_degree, ctx.seed)
    return report.passed, report.details, report.witnesses[0] if report.witnesses else None


@check("iso", "surjectivity", "every computed morphism of every block A_{i,j} reduces to generators and has a phi-preimage")
def _iso_surjectivity(ctx: VerificationContext) -> Outcome:
    report = mckay.surjectivity_evidence(ctx.n, ctx.deg_xy, ctx.deg_t, ctx.max_unknowns)
    return report.passed, report.details, report.witnesses[0] if report.witnesses else None

