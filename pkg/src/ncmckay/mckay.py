"""
McKay Module

The algebra map phi: S -> A = End(T) sending u, v, g to u^t, v^t, g^t and
the parameters s_i to their expressions in t, plus the evidence that phi
is a homomorphism, injective on graded slices and surjective onto the
computed blocks.
"""

import logging
import random
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .cbh_algebra import (
    SElement,
    block,
    generator_u,
    generator_v,
    make_alpha_s,
    make_beta_s,
    make_es,
    make_xyz_s,
)
from .coordinate_converter import coord_s_from_t, s_forms_in_w, w_forms_in_t
from .errors import ReductionError
from .linalg import field_rank
from .nc_scheme import DEFAULT_MAX_UNKNOWNS, SheafHom
from .param_poly import ParamPoly, param_ring
from .tilting import (
    EndoElement,
    Generator,
    Reduction,
    block_hom_basis,
    identity,
    leading_relation_holds,
    make_g,
    make_idempotent,
    make_u,
    make_v,
    make_xyz,
    reduce_to_generators,
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"


@dataclass
class EvidenceReport:
    """Outcome of one evidence run: {check, n, bounds, status, witnesses}."""

    check: str
    n: int
    bounds: Dict[str, int] = field(default_factory=dict)
    status: str = PASS
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def fail(self, witness: Dict[str, Any]) -> None:
        self.status = FAIL
        self.witnesses.append(witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "n": self.n,
            "bounds": dict(self.bounds),
            "status": self.status,
            "witnesses": list(self.witnesses),
            "details": dict(self.details),
        }


# -- the map --------------------------------------------------------------------


def t_images_of_s(n: int, w_forms: Optional[Sequence[ParamPoly]] = None) -> Tuple[ParamPoly, ...]:
    """
    s_i written in t. w_forms overrides the w_j -> t substitution, which the
    mutation check uses to perturb the parameter change.
    """
    forms = tuple(w_forms) if w_forms is not None else w_forms_in_t(n)
    return tuple(s.substitute(forms) for s in s_forms_in_w(n))


class McKayMorphism:
    """
    phi: S -> End(T) for a fixed n.

    Powers of u^t, v^t and g^t are cached; images are assembled term by term
    as coeff(t) * (u^t)^a (v^t)^b (g^t)^j.
    """

    def __init__(self, n: int, w_forms: Optional[Sequence[ParamPoly]] = None):
        self.n = n
        self.s_images = t_images_of_s(n, w_forms)
        self._u = [identity(n)]
        self._v = [identity(n)]
        self._g = [identity(n)]
        self._words: Dict[Tuple[int, int, int], EndoElement] = {}
        self._lock = threading.Lock()

    def _power(self, cache: List[EndoElement], base: EndoElement, e: int) -> EndoElement:
        while len(cache) <= e:
            cache.append(cache[-1] * base)
        return cache[e]

    def monomial_image(self, a: int, b: int, j: int) -> EndoElement:
        key = (a, b, j % (self.n + 1))
        with self._lock:
            if key not in self._words:
                u = self._power(self._u, make_u(self.n), a)
                v = self._power(self._v, make_v(self.n), b)
                g = self._power(self._g, make_g(self.n), key[2])
                self._words[key] = u * v * g
            return self._words[key]

    def coefficient(self, c: ParamPoly) -> ParamPoly:
        return c.substitute(self.s_images)

    def __call__(self, a: SElement) -> EndoElement:
        if a.n != self.n:
            raise ValueError(f"Element for n={a.n} passed to phi for n={self.n}")
        result = EndoElement.zero(self.n)
        for (ua, vb, j), coeff in a.terms.items():
            result = result + self.monomial_image(ua, vb, j).scale(self.coefficient(coeff))
        return result


@lru_cache(maxsize=None)
def get_phi(n: int) -> McKayMorphism:
    return McKayMorphism(n)


def phi(a: SElement) -> EndoElement:
    return get_phi(a.n)(a)


# -- homomorphism -----------------------------------------------------------------


def random_element(n: int, degree: int, rng: random.Random, max_terms: int = 3) -> SElement:
    """A nonzero element with small integer coefficients, degree <= degree and linear s-terms."""
    ring = param_ring("S", n)
    terms: Dict[Tuple[int, int, int], ParamPoly] = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, degree)
        a = rng.randint(0, d)
        coeff = ring.constant(rng.choice([-2, -1, 1, 2, 3]))
        if rng.random() < 0.5:
            coeff = coeff + ring.var(rng.randrange(n + 1)).scale(rng.choice([-1, 1]))
        key = (a, d - a, rng.randrange(n + 1))
        terms[key] = terms[key] + coeff if key in terms else coeff
    element = SElement(n, terms)
    return element if element else SElement.one(n)


def verify_phi_multiplicative(
    n: int, sample_count: int, degree_bound: int, seed: int = 0, stop_on_failure: bool = True
) -> EvidenceReport:
    """phi(a b) == phi(a) phi(b) for the generator pairs and random bounded pairs."""
    report = EvidenceReport("phi-multiplicative", n, {"samples": sample_count, "degree": degree_bound})
    rng = random.Random(seed)
    u, v = generator_u(n), generator_v(n)
    g = SElement.monomial(n, 0, 0, 1)
    pairs: List[Tuple[SElement, SElement]] = [(u, v), (v, u), (g, u), (g, v)]
    pairs += [(random_element(n, degree_bound, rng), random_element(n, degree_bound, rng))
              for _ in range(sample_count)]
    phi_n = get_phi(n)
    for a, b in pairs:
        if phi_n(a * b) != phi_n(a) * phi_n(b):
            report.fail({"a": repr(a), "b": repr(b)})
            if stop_on_failure:
                break
    report.details["pairs"] = len(pairs)
    return report


def relation_image(n: int, w_forms: Optional[Sequence[ParamPoly]] = None) -> EndoElement:
    """
    phi(u) phi(v) - phi(v) phi(u) - Sum_i phi(s_i) phi(g)^i, multiplied in End(T).

    Products are formed in End(T); forming them in S would apply the relation itself.
    """
    morphism = McKayMorphism(n, w_forms) if w_forms is not None else get_phi(n)
    u_t = morphism(generator_u(n))
    v_t = morphism(generator_v(n))
    g_t = morphism(SElement.monomial(n, 0, 0, 1))
    ring = param_ring("S", n)
    sigma = EndoElement.zero(n)
    for i in range(n + 1):
        sigma = sigma + (g_t ** i).scale(morphism.coefficient(ring.var(i)))
    return u_t * v_t - v_t * u_t - sigma


def mutation_breaks_relation(n: int, j: int) -> bool:
    """Adding t_0 to w_j must make phi fail on the defining relation."""
    forms = list(w_forms_in_t(n))
    forms[j] = forms[j] + param_ring("T", n).var(0)
    return not relation_image(n, forms).is_zero()


# -- injectivity ------------------------------------------------------------------


def _chart0_rows(homs: Sequence[SheafHom], point: Sequence[int]) -> Tuple[List[Dict[int, Any]], int]:
    index: Dict[Tuple[int, int], int] = {}
    rows = []
    for h in homs:
        row: Dict[int, Any] = {}
        for (l, m), coeff in h.components[0].terms.items():
            value = coeff.evaluate(point)
            if value:
                col = index.setdefault((l, m), len(index))
                row[col] = row[col] + value if col in row else value
        rows.append(row)
    return rows, len(index)


def specialized_rank(homs: Sequence[SheafHom], n: int, rng: random.Random, tries: int = 3) -> int:
    """
    Lower bound for the rank over Q(zeta)(t) of block morphisms, from their
    chart-0 components evaluated at random integer parameter points.
    """
    best = 0
    field_ = param_ring("T", n).field
    for _ in range(tries):
        point = [rng.randint(-97, 97) for _ in range(n + 1)]
        rows, ncols = _chart0_rows(homs, point)
        best = max(best, field_rank(rows, ncols, field_))
        if best == len(homs):
            break
    return best


def s_slice_basis(i: int, j: int, n: int, degree: int) -> List[SElement]:
    """
    Nonzero block projections e_i u^a v^b e_j with a + b = degree. The group
    part only rescales a projection, so g-free monomials suffice.
    """
    projections = (block(SElement.monomial(n, a, degree - a), i, j) for a in range(degree + 1))
    return [p for p in projections if p]


def injectivity_evidence(n: int, degree_bound: int, seed: int = 0) -> EvidenceReport:
    """
    (a) phi(x_s, y_s, z_s) = (x_t, y_t, z_t) on every diagonal block;
    (b) top terms of x y and z^(n+1) agree on both sides;
    (c) phi is injective on every graded slice e_i S_d e_j, d <= degree_bound.
    """
    report = EvidenceReport("phi-injective", n, {"degree": degree_bound})
    phi_n = get_phi(n)
    for i in range(n + 1):
        for name, s_side, t_side in zip("xyz", make_xyz_s(i, n), make_xyz(i, n)):
            if phi_n(s_side) != t_side:
                report.fail({"generator": f"{name}_{i}{i}"})

    x_s, y_s, z_s = make_xyz_s(0, n)
    top = 2 * (n + 1)
    if (x_s * y_s).homogeneous_part(top) != (z_s ** (n + 1)).homogeneous_part(top):
        report.fail({"leading_relation": "S"})
    if not leading_relation_holds(n):
        report.fail({"leading_relation": "A"})

    rng = random.Random(seed)
    ranks = {}
    for i in range(n + 1):
        for j in range(n + 1):
            for d in range(degree_bound + 1):
                basis = s_slice_basis(i, j, n, d)
                if not basis:
                    continue
                images = [phi_n(b).block(i, j) for b in basis]
                rank = specialized_rank(images, n, rng)
                ranks[f"{i},{j},{d}"] = [len(basis), rank]
                if rank != len(basis):
                    report.fail({"block": [i, j], "degree": d, "dim": len(basis), "rank": rank})
    report.details["slices"] = ranks
    return report


# -- surjectivity -----------------------------------------------------------------


def generator_preimage(gen: Generator, n: int) -> SElement:
    kind, k = gen
    if kind == "e":
        return make_es(k, n)
    if kind == "alpha":
        return make_alpha_s(k, n)
    if kind == "beta":
        return make_beta_s(k, n)
    x, y, z = make_xyz_s(k, n)
    return {"x": x, "y": y, "z": z}[kind]


def preimage(reduction: Reduction, n: int) -> SElement:
    """Lift a generator expansion to S; coefficients go through the t -> s change."""
    total = SElement.zero(n)
    for term in reduction.terms:
        word = generator_preimage(term.word[0], n)
        for gen in term.word[1:]:
            word = word * generator_preimage(gen, n)
        total = total + word.scale(coord_s_from_t(term.coeff))
    return total


def surjectivity_evidence(
    n: int,
    deg_bound_xy: int,
    deg_bound_t: int,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
    blocks: Optional[Sequence[Tuple[int, int]]] = None,
) -> EvidenceReport:
    """Every computed basis morphism of every block reduces to zero and has a phi-preimage."""
    report = EvidenceReport("phi-surjective", n, {"xy": deg_bound_xy, "t": deg_bound_t})
    phi_n = get_phi(n)
    targets = blocks if blocks is not None else [(i, j) for i in range(n + 1) for j in range(n + 1)]
    counts = {}
    for i, j in targets:
        basis = block_hom_basis(i, j, n, deg_bound_xy, deg_bound_t, max_unknowns)
        counts[f"{i},{j}"] = len(basis)
        for h in basis:
            try:
                reduction = reduce_to_generators(h)
            except ReductionError as e:
                report.fail({"block": [i, j], "error": str(e), "hom": h.to_dict()})
                continue
            if not reduction.complete:
                report.fail({"block": [i, j], "remainder": reduction.remainder.to_dict()})
                continue
            if phi_n(preimage(reduction, n)).block(i, j) != h:
                report.fail({"block": [i, j], "preimage": "mismatch", "hom": h.to_dict()})
    report.details["basis_sizes"] = counts
    logger.info(f"Surjectivity evidence n={n}: {sum(counts.values())} basis morphisms, status {report.status}")
    return report


def block_compatibility(a: SElement, i: int, j: int) -> bool:
    """phi(e_i a e_j) == e_i phi(a) e_j"""
    n = a.n
    phi_n = get_phi(n)
    return phi_n(block(a, i, j)) == make_idempotent(i, n) * phi_n(a) * make_idempotent(j, n)
