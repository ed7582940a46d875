"""
NC Scheme Module

The noncommutative scheme X glued from the chart algebras R_0..R_n along
the overlaps R_(i,i+1), its divisorial sheaves R(Sum d_i D_i), their
morphisms, the Cech map Delta and the computations built on it.

Conventions:
    - A morphism h: R(D) -> R(D') is a tuple (m_0, ..., m_n) with m_k in R_k,
      acting by h_k(r) = m_k r. Compatibility on the overlap (i-1, i), in the
      generators of chart i-1, reads
          m_{i-1} = x_{i-1}^{d'_i} tau(m_i) x_{i-1}^{-d_i}
      where tau is transition_to_lower.
    - Delta(m)_{i-1,i} = m_{i-1} - x_{i-1}^{d'_i} tau(m_i) x_{i-1}^{-d_i}, so
      Hom = Ker(Delta) and the first Cech group is Coker(Delta).
    - D_0 = 0, so R(-D_0) = R.

Gradings:
    Delta is homogeneous for the principal degree (deg x = 1, deg y = -1)
    and for the torus weight (x_i, y_i, t_j) -> (1-n+2i, n+1-2i, 2). A slice is
    labelled by the bidegree (p, w) of its chart-0 part; on chart k the
    bidegree is shifted by the twist. Every slice of every chart, overlap
    and cochain space is finite-dimensional, so slice computations are exact.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .chart_algebra import (
    ChartElement,
    ChartRingId,
    embed,
    to_chart,
    torus_weights,
    transition_to_lower,
    transition_to_upper,
)
from .cyclotomic import CycNumber, get_field
from .errors import GluingError, RingMismatchError
from .linalg import FieldRow, check_budget, field_kernel, field_rank
from .param_poly import Exps, ParamPoly, param_ring

logger = logging.getLogger(__name__)

DEFAULT_MAX_UNKNOWNS = 20000

Bidegree = Tuple[int, int]
SliceMono = Tuple[int, int, Exps]


# -- divisors -----------------------------------------------------------------


@dataclass(frozen=True)
class DivisorData:
    """Twist vector (d_1, ..., d_n) of R(Sum d_i D_i)."""

    d: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.d)

    @classmethod
    def zero(cls, n: int) -> "DivisorData":
        return cls((0,) * n)

    @classmethod
    def prime(cls, i: int, n: int) -> "DivisorData":
        """D_i, with D_0 = 0."""
        if not 0 <= i <= n:
            raise IndexError(f"Divisor index {i} out of range for n={n}")
        return cls(tuple(1 if k == i else 0 for k in range(1, n + 1)))

    @classmethod
    def minus_prime(cls, i: int, n: int) -> "DivisorData":
        """-D_i, the twist of the summand R(-D_i) of the tilting module."""
        return -cls.prime(i, n)

    def at(self, i: int) -> int:
        """d_i for 1 <= i <= n."""
        return self.d[i - 1]

    def __add__(self, other: "DivisorData") -> "DivisorData":
        if other.n != self.n:
            raise ValueError("Divisors on different schemes")
        return DivisorData(tuple(a + b for a, b in zip(self.d, other.d)))

    def __neg__(self) -> "DivisorData":
        return DivisorData(tuple(-a for a in self.d))

    def __sub__(self, other: "DivisorData") -> "DivisorData":
        return self + (-other)

    def to_dict(self) -> List[int]:
        return list(self.d)


# -- the scheme ---------------------------------------------------------------


class NcScheme:
    """
    The glued scheme for the A_n singularity: charts R_0..R_n and overlaps
    R_(i,i+1) with gluings realized by the transition maps.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError(f"Singularity index must be nonnegative, got {n}")
        self.n = n
        self.params = param_ring("T", n)
        self.charts = tuple(ChartRingId.chart(i, n) for i in range(n + 1))
        self.overlaps = tuple(ChartRingId.overlap(i, n) for i in range(n))

    def __repr__(self) -> str:
        return f"NcScheme(n={self.n})"

    def x(self, i: int) -> ChartElement:
        return ChartElement.monomial(self.charts[i], 1, 0)

    def y(self, i: int) -> ChartElement:
        return ChartElement.monomial(self.charts[i], 0, 1)

    def t(self, k: int) -> ParamPoly:
        return self.params.var(k)

    def gluing(self, i: int) -> Tuple[ChartElement, ChartElement]:
        """Images of x_{i+1}, y_{i+1} in the overlap (i, i+1), chart-i generators."""
        return transition_to_lower(self.x(i + 1)), transition_to_lower(self.y(i + 1))

    def check_birationality(self) -> Tuple[bool, Optional[int]]:
        """x_i x_i^-1 = 1 and y_{i+1} x_i = 1 in every overlap."""
        for i, ring in enumerate(self.overlaps):
            x = ChartElement.monomial(ring, 1, 0)
            x_inv = ChartElement.monomial(ring, -1, 0)
            one = ChartElement.one(ring)
            if x * x_inv != one or x_inv * x != one:
                return False, i
            if self.gluing(i)[1] * x != one:
                return False, i
        return True, None

    def check_commutators(self) -> Tuple[bool, Optional[int]]:
        """x y - y x = t_0 in every chart, also after transition to the lower neighbour."""
        t0 = self.t(0)
        for i in range(self.n + 1):
            x, y = self.x(i), self.y(i)
            if x * y - y * x != t0:
                return False, i
            if i >= 1:
                tx, ty = transition_to_lower(x), transition_to_lower(y)
                if tx * ty - ty * tx != ChartElement.constant(tx.ring, t0):
                    return False, i
        return True, None


# -- morphisms ----------------------------------------------------------------


def _x_power(ring: ChartRingId, e: int) -> ChartElement:
    return ChartElement.monomial(ring, e, 0)


@lru_cache(maxsize=None)
def _glue_monomial(n: int, k: int, l: int, m: int, dprime: int, d: int) -> ChartElement:
    """x_{k-1}^{d'} tau(x_k^l y_k^m) x_{k-1}^{-d} in the lower view of R_(k-1,k)."""
    lower = ChartRingId.overlap(k - 1, n)
    image = transition_to_lower(ChartElement.monomial(ChartRingId.chart(k, n), l, m))
    return _x_power(lower, dprime) * image * _x_power(lower, -d)


def glue_image(m_k: ChartElement, k: int, source: DivisorData, target: DivisorData) -> ChartElement:
    """x_{k-1}^{d'_k} tau(m_k) x_{k-1}^{-d_k} for a chart-k element."""
    lower = ChartRingId.overlap(k - 1, source.n)
    result = ChartElement.zero(lower)
    for (l, m), coeff in m_k.terms.items():
        mono = _glue_monomial(source.n, k, l, m, target.at(k), source.at(k))
        result = result + mono.scale(coeff)
    return result


class SheafHom:
    """
    A morphism R(source) -> R(target) given by its chart components.
    """

    __slots__ = ("source", "target", "components")

    def __init__(self, source: DivisorData, target: DivisorData, components: Sequence[ChartElement]):
        n = source.n
        if target.n != n or len(components) != n + 1:
            raise ValueError(f"Expected {n + 1} components for n={n}, got {len(components)}")
        for k, comp in enumerate(components):
            if comp.ring != ChartRingId.chart(k, n):
                raise RingMismatchError(f"Component {k} lives in {comp.ring.label()}")
        self.source = source
        self.target = target
        self.components = tuple(components)

    @property
    def n(self) -> int:
        return self.source.n

    @classmethod
    def zero(cls, source: DivisorData, target: DivisorData) -> "SheafHom":
        n = source.n
        return cls(source, target, [ChartElement.zero(ChartRingId.chart(k, n)) for k in range(n + 1)])

    @classmethod
    def identity(cls, twist: DivisorData) -> "SheafHom":
        n = twist.n
        return cls(twist, twist, [ChartElement.one(ChartRingId.chart(k, n)) for k in range(n + 1)])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _same_type(self, other: "SheafHom") -> None:
        if (other.source, other.target) != (self.source, self.target):
            raise RingMismatchError(
                f"Morphisms {self.source.d}->{self.target.d} and {other.source.d}->{other.target.d} differ in type"
            )

    def __add__(self, other: "SheafHom") -> "SheafHom":
        self._same_type(other)
        return SheafHom(self.source, self.target, [a + b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "SheafHom":
        return SheafHom(self.source, self.target, [-a for a in self.components])

    def __sub__(self, other: "SheafHom") -> "SheafHom":
        return self + (-other)

    def scale(self, c: Any) -> "SheafHom":
        return SheafHom(self.source, self.target, [a.scale(c) for a in self.components])

    def compose(self, other: "SheafHom") -> "SheafHom":
        """self after other; the chart components multiply as m * m'."""
        if other.target != self.source:
            raise RingMismatchError(f"Cannot compose: {other.target.d} != {self.source.d}")
        return SheafHom(other.source, self.target, [a * b for a, b in zip(self.components, other.components)])

    def glue_check(self) -> Tuple[bool, Optional[int]]:
        """True iff every overlap square commutes; otherwise the first failing index."""
        for i in range(1, self.n + 1):
            lower = embed(self.components[i - 1], ChartRingId.overlap(i - 1, self.n))
            if lower != glue_image(self.components[i], i, self.source, self.target):
                return False, i
        return True, None

    def chart_shifts(self) -> List[Tuple[int, int]]:
        """(principal, weight) offsets of chart k relative to chart 0."""
        return chart_shifts(self.source, self.target)

    def homogeneous_parts(self) -> Dict[int, "SheafHom"]:
        """Split by the principal degree of the chart-0 component."""
        shifts = self.chart_shifts()
        parts = {}
        for p in self.components[0].principal_degrees():
            parts[p] = SheafHom(
                self.source,
                self.target,
                [c.restrict_principal(p + shifts[k][0]) for k, c in enumerate(self.components)],
            )
        return parts

    def chart0_vector(self) -> Dict[Tuple[int, int, Exps], CycNumber]:
        """Coordinates of the chart-0 component; a morphism is determined by them."""
        vector = {}
        for (l, m), coeff in self.components[0].terms.items():
            for exps, c in coeff.terms.items():
                vector[(l, m, exps)] = c
        return vector

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SheafHom):
            return NotImplemented
        return (self.source, self.target, self.components) == (other.source, other.target, other.components)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.components))

    def __repr__(self) -> str:
        comps = ", ".join(repr(c) for c in self.components)
        return f"SheafHom({self.source.d} -> {self.target.d}: [{comps}])"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source_d": self.source.to_dict(),
            "target_d": self.target.to_dict(),
            "components": [c.to_dict() for c in self.components],
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "SheafHom":
        return SheafHom(
            DivisorData(tuple(data["source_d"])),
            DivisorData(tuple(data["target_d"])),
            [ChartElement.from_dict(c) for c in data["components"]],
        )


def chart_shifts(source: DivisorData, target: DivisorData) -> List[Tuple[int, int]]:
    n = source.n
    shifts = [(0, 0)]
    p, w = 0, 0
    for k in range(1, n + 1):
        delta = target.at(k) - source.at(k)
        p -= delta
        w -= delta * torus_weights(k - 1, n)[0]
        shifts.append((p, w))
    return shifts


def glue_check(h: SheafHom) -> Tuple[bool, Optional[int]]:
    return h.glue_check()


def propagate(k: int, m_k: ChartElement, source: DivisorData, target: DivisorData) -> SheafHom:
    """
    The unique morphism R(source) -> R(target) with chart-k component m_k.

    Raises:
        GluingError: when some transported component leaves its chart ring
    """
    n = source.n
    components: List[Optional[ChartElement]] = [None] * (n + 1)
    components[k] = to_chart(m_k, k)
    try:
        for i in range(k, 0, -1):
            components[i - 1] = to_chart(glue_image(components[i], i, source, target), i - 1)
        for i in range(k + 1, n + 1):
            lower = ChartRingId.overlap(i - 1, n)
            prev = embed(components[i - 1], lower)
            untwisted = _x_power(lower, -target.at(i)) * prev * _x_power(lower, source.at(i))
            components[i] = to_chart(transition_to_upper(untwisted), i)
    except RingMismatchError as e:
        raise GluingError(f"Chart {k} component {m_k} does not extend to a morphism: {e}") from e
    return SheafHom(source, target, components)


# -- Cech complex -------------------------------------------------------------


@dataclass(frozen=True)
class CechCocycle:
    """(g_01, ..., g_{n-1,n}), each written in the lower chart's generators."""

    components: Tuple[ChartElement, ...]

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.components)

    def to_dict(self) -> List[Dict[str, Any]]:
        return [g.to_dict() for g in self.components]


def delta(hs: Sequence[ChartElement], source: DivisorData, target: DivisorData) -> CechCocycle:
    """The Cech differential of a chart tuple."""
    n = source.n
    out = []
    for i in range(1, n + 1):
        lower = embed(to_chart(hs[i - 1], i - 1), ChartRingId.overlap(i - 1, n))
        out.append(lower - glue_image(to_chart(hs[i], i), i, source, target))
    return CechCocycle(tuple(out))


def slice_monomials(chart: int, n: int, p: int, w: int, overlap: bool = False) -> List[SliceMono]:
    """
    Monomials t^tau x^l y^m of bidegree (p, w) in chart coordinates.

    With overlap=True the x exponent may be negative (lower overlap view).
    """
    a = torus_weights(chart, n)[0]
    rhs = w - a * p
    if rhs < 0 or rhs % 2:
        return []
    total = rhs // 2
    params = param_ring("T", n)
    out = []
    for m in range(total + 1):
        l = m + p
        if l < 0 and not overlap:
            continue
        for exps in params.monomials_of_degree(total - m):
            out.append((l, m, exps))
    return out


def monomial_bidegree(chart: int, n: int, l: int, m: int, exps: Exps) -> Bidegree:
    a, b = torus_weights(chart, n)
    return (l - m, 2 * sum(exps) + a * l + b * m)


@dataclass
class DeltaSlice:
    """Delta restricted to one bidegree slice."""

    bidegree: Bidegree
    unknowns: List[Tuple[int, int, int, Exps]]
    rows: List[FieldRow]
    cochain_dim: int


def delta_slice(
    source: DivisorData,
    target: DivisorData,
    bidegree: Bidegree,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> DeltaSlice:
    """
    Matrix of Delta on the slice whose chart-0 part has the given bidegree.

    Rows are the cochain coordinates (overlap, l, m, tau); one column per
    chart monomial (chart, l, m, tau).
    """
    n = source.n
    field_ = get_field(n + 1)
    shifts = chart_shifts(source, target)
    p0, w0 = bidegree
    unknowns = []
    for k in range(n + 1):
        for l, m, exps in slice_monomials(k, n, p0 + shifts[k][0], w0 + shifts[k][1]):
            unknowns.append((k, l, m, exps))
    check_budget(len(unknowns), max_unknowns or 0)

    row_index: Dict[Tuple[int, int, int, Exps], int] = {}
    for k in range(n):
        for l, m, exps in slice_monomials(k, n, p0 + shifts[k][0], w0 + shifts[k][1], overlap=True):
            row_index[(k, l, m, exps)] = len(row_index)

    columns: List[Dict[int, CycNumber]] = []
    for k, l, m, exps in unknowns:
        column: Dict[int, CycNumber] = {}
        if k < n:
            column[row_index[(k, l, m, exps)]] = field_.one
        if k >= 1:
            image = _glue_monomial(n, k, l, m, target.at(k), source.at(k))
            for (il, im), coeff in image.terms.items():
                for texps, c in coeff.terms.items():
                    key = (k - 1, il, im, tuple(a + b for a, b in zip(texps, exps)))
                    r = row_index[key]
                    column[r] = column.get(r, field_.zero) - c
        columns.append(column)

    rows: List[FieldRow] = [dict() for _ in range(len(row_index))]
    for col, column in enumerate(columns):
        for r, value in column.items():
            if value:
                rows[r][col] = value
    return DeltaSlice(bidegree, unknowns, rows, len(row_index))


def _hom_from_vector(
    source: DivisorData, target: DivisorData, unknowns: Sequence[Tuple[int, int, int, Exps]], vector: FieldRow
) -> SheafHom:
    n = source.n
    params = param_ring("T", n)
    comps = [dict() for _ in range(n + 1)]
    for col, value in vector.items():
        k, l, m, exps = unknowns[col]
        term = params.monomial(exps, value)
        comps[k][(l, m)] = comps[k][(l, m)] + term if (l, m) in comps[k] else term
    return SheafHom(source, target, [ChartElement(ChartRingId.chart(k, n), comps[k]) for k in range(n + 1)])


def hom_slice(
    source: DivisorData,
    target: DivisorData,
    bidegree: Bidegree,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> List[SheafHom]:
    """Basis of the morphisms R(source) -> R(target) in one bidegree slice."""
    sl = delta_slice(source, target, bidegree, max_unknowns)
    kernel = field_kernel(sl.rows, len(sl.unknowns), get_field(source.n + 1))
    return [_hom_from_vector(source, target, sl.unknowns, vec) for vec in kernel]


def h1_slice(
    source: DivisorData,
    target: DivisorData,
    bidegree: Bidegree,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> Tuple[int, int]:
    """(cochain dimension, cokernel dimension) of Delta on one slice."""
    sl = delta_slice(source, target, bidegree, max_unknowns)
    rank = field_rank(sl.rows, len(sl.unknowns), get_field(source.n + 1))
    return sl.cochain_dim, sl.cochain_dim - rank


def window_bidegrees(n: int, deg_bound_xy: int, deg_bound_t: int) -> List[Bidegree]:
    """Bidegrees of chart-0 monomials with l + m <= deg_bound_xy and t-degree <= deg_bound_t."""
    found = set()
    for l in range(deg_bound_xy + 1):
        for m in range(deg_bound_xy + 1 - l):
            for tdeg in range(deg_bound_t + 1):
                found.add(monomial_bidegree(0, n, l, m, (tdeg,) + (0,) * n))
    return sorted(found)


def _in_window(l: int, m: int, exps: Exps, deg_bound_xy: int, deg_bound_t: int) -> bool:
    return abs(l) + m <= deg_bound_xy and sum(exps) <= deg_bound_t


def hom_basis(
    source: DivisorData,
    target: DivisorData,
    deg_bound_xy: int,
    deg_bound_t: int,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> List[SheafHom]:
    """
    Basis of the morphisms R(source) -> R(target) whose chart-0 component
    has filtration degree <= deg_bound_xy and t-degree <= deg_bound_t.

    A morphism is determined by its chart-0 component and splits into
    bihomogeneous parts, so the window is a direct sum of slice pieces.
    """
    if deg_bound_xy < 0 or deg_bound_t < 0:
        raise ValueError("Degree bounds must be nonnegative")
    n = source.n
    field_ = get_field(n + 1)
    basis: List[SheafHom] = []
    for bidegree in window_bidegrees(n, deg_bound_xy, deg_bound_t):
        sl = delta_slice(source, target, bidegree, max_unknowns)
        kernel = field_kernel(sl.rows, len(sl.unknowns), field_)
        if not kernel:
            continue
        outside = [col for col, (k, l, m, exps) in enumerate(sl.unknowns)
                   if k == 0 and not _in_window(l, m, exps, deg_bound_xy, deg_bound_t)]
        constraints = [{j: vec[col] for j, vec in enumerate(kernel) if col in vec} for col in outside]
        for combo in field_kernel(constraints, len(kernel), field_):
            vector: FieldRow = {}
            for j, c in combo.items():
                for col, value in kernel[j].items():
                    vector[col] = vector.get(col, field_.zero) + c * value
            vector = {col: v for col, v in vector.items() if v}
            if vector:
                basis.append(_hom_from_vector(source, target, sl.unknowns, vector))
        logger.debug(f"Hom slice {bidegree}: {len(sl.unknowns)} unknowns, kernel {len(kernel)}")
    return basis


@dataclass
class SliceReport:
    p: int
    w: int
    cochains: int
    h1: int
    stable: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "w": self.w, "cochains": self.cochains, "h1": self.h1, "stable": self.stable}


@dataclass
class H1Report:
    source: DivisorData
    target: DivisorData
    bounds: Tuple[int, int]
    slices: List[SliceReport] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(s.h1 for s in self.slices)

    def nonzero_slices(self) -> List[SliceReport]:
        return [s for s in self.slices if s.h1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source_d": self.source.to_dict(),
            "target_d": self.target.to_dict(),
            "bounds": {"xy": self.bounds[0], "t": self.bounds[1]},
            "total": self.total,
            "slices": [s.to_dict() for s in self.slices],
        }


def cochain_bidegrees(
    source: DivisorData, target: DivisorData, deg_bound_xy: int, deg_bound_t: int
) -> List[Bidegree]:
    """
    Chart-0 bidegrees of the slices containing an overlap monomial with
    |l| + m <= deg_bound_xy and t-degree <= deg_bound_t.
    """
    n = source.n
    shifts = chart_shifts(source, target)
    found = set()
    for k in range(n):
        a, b = torus_weights(k, n)
        for l in range(-deg_bound_xy, deg_bound_xy + 1):
            for m in range(deg_bound_xy - abs(l) + 1):
                for tdeg in range(deg_bound_t + 1):
                    found.add((l - m - shifts[k][0], 2 * tdeg + a * l + b * m - shifts[k][1]))
    return sorted(found)


def cech_h1_dim(
    source: DivisorData,
    target: DivisorData,
    deg_bound_xy: int,
    deg_bound_t: int,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> H1Report:
    """
    Dimensions of the first Cech group of Hom(R(source), R(target)) on every
    slice that meets the cochain window.

    Slices are finite, so each reported value is exact and stable.
    """
    report = H1Report(source, target, (deg_bound_xy, deg_bound_t))
    for p, w in cochain_bidegrees(source, target, deg_bound_xy, deg_bound_t):
        cochains, h1 = h1_slice(source, target, (p, w), max_unknowns)
        if cochains:
            report.slices.append(SliceReport(p, w, cochains, h1))
    logger.info(
        f"H1({source.d} -> {target.d}) at bounds ({deg_bound_xy}, {deg_bound_t}): "
        f"{len(report.slices)} slices, total {report.total}"
    )
    return report


def cech_solve_large_twist(g: CechCocycle, target: DivisorData) -> Tuple[DivisorData, Tuple[ChartElement, ...]]:
    """
    Forward sweep solving Delta(h) = g for R(-Sum d_i D_i) -> R(target).

    h_0 = 0; on each overlap h_i = y_i^{d'_i} (h_{i-1} - g_{i-1,i}) y_i^{d_i}
    (written in chart-i generators) with the smallest d_i >= 0 that clears
    the negative powers of y_i.

    Returns:
        (d, hs) with delta(hs, -d, target) == g
    """
    n = target.n
    hs = [ChartElement.zero(ChartRingId.chart(0, n))]
    d = []
    for i in range(1, n + 1):
        lower = ChartRingId.overlap(i - 1, n)
        diff = embed(hs[i - 1], lower) - embed(g.components[i - 1], lower)
        upper = transition_to_upper(_x_power(lower, -target.at(i)) * diff)
        d_i = max(0, -upper.min_y_power())
        shifted = upper * ChartElement.monomial(upper.ring, 0, d_i)
        hs.append(to_chart(shifted, i))
        d.append(d_i)
    return DivisorData(tuple(d)), tuple(hs)


# -- the short exact sequence ---------------------------------------------------


@dataclass
class SesMaps:
    """0 -> R(D) -(h,h')-> R(D+D_j) + R(D+D_k) -(g,g')-> R(D+D_j+D_k) -> 0"""

    d: DivisorData
    j: int
    k: int
    h: SheafHom
    h_prime: SheafHom
    g: SheafHom
    g_prime: SheafHom

    @property
    def first(self) -> Tuple[SheafHom, SheafHom]:
        return self.h, self.h_prime

    @property
    def second(self) -> Tuple[SheafHom, SheafHom]:
        return self.g, self.g_prime

    def composite(self) -> SheafHom:
        return self.g.compose(self.h) + self.g_prime.compose(self.h_prime)


def ses_maps(d: DivisorData, j: int, k: int) -> SesMaps:
    """
    The maps of the exact sequence attached to 1 <= j <= k <= n.

    h is 1 on chart j; h' and g are y_k on chart k; g' is -h for the
    shifted twists. Every map is the propagation of that single component.
    """
    n = d.n
    if not 1 <= j <= k <= n:
        raise ValueError(f"Need 1 <= j <= k <= n, got j={j}, k={k}, n={n}")
    dj = d + DivisorData.prime(j, n)
    dk = d + DivisorData.prime(k, n)
    djk = dj + DivisorData.prime(k, n)
    chart_j = ChartRingId.chart(j, n)
    chart_k = ChartRingId.chart(k, n)
    y_k = ChartElement.monomial(chart_k, 0, 1)
    return SesMaps(
        d=d,
        j=j,
        k=k,
        h=propagate(j, ChartElement.one(chart_j), d, dj),
        h_prime=propagate(k, y_k, d, dk),
        g=propagate(k, y_k, dj, djk),
        g_prime=-propagate(j, ChartElement.one(chart_j), dk, djk),
    )


def hom_bidegree(h: SheafHom) -> Bidegree:
    """Bidegree of a bihomogeneous morphism, read off its chart-0 component."""
    found = {monomial_bidegree(0, h.n, l, m, exps) for (l, m, exps) in h.chart0_vector()}
    if len(found) != 1:
        raise ValueError(f"Morphism {h} is not bihomogeneous")
    return found.pop()


def _add_bidegree(a: Bidegree, b: Bidegree) -> Bidegree:
    return (a[0] + b[0], a[1] + b[1])


def _vectors(homs: Iterable[SheafHom], tag: int = 0) -> List[Dict[Tuple[int, Any], CycNumber]]:
    return [{(tag, key): v for key, v in h.chart0_vector().items()} for h in homs]


def _rank(vectors: List[Dict[Any, CycNumber]], field_) -> int:
    index: Dict[Any, int] = {}
    rows = []
    for vec in vectors:
        row = {}
        for key, value in vec.items():
            row[index.setdefault(key, len(index))] = value
        rows.append(row)
    return field_rank(rows, len(index), field_)


@dataclass
class SesSliceCheck:
    bidegree: Bidegree
    dims: Tuple[int, int, int]
    h1: Tuple[int, int, int]
    first_rank: int
    second_rank: int

    @property
    def injective(self) -> bool:
        return self.first_rank == self.dims[0]

    @property
    def exact_middle(self) -> bool:
        return self.dims[1] - self.second_rank == self.first_rank

    @property
    def euler(self) -> int:
        return (self.dims[0] - self.dims[1] + self.dims[2]) - (self.h1[0] - self.h1[1] + self.h1[2])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bidegree": list(self.bidegree),
            "hom_dims": list(self.dims),
            "h1_dims": list(self.h1),
            "injective": self.injective,
            "exact_middle": self.exact_middle,
            "euler": self.euler,
        }


def ses_slice_check(
    maps: SesMaps, bidegree: Bidegree, max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS
) -> SesSliceCheck:
    """
    Global sections of the sequence on one slice of Hom(R, -): injectivity of
    the first map, exactness in the middle and the Euler relation with the
    first Cech groups.
    """
    n = maps.d.n
    field_ = get_field(n + 1)
    zero = DivisorData.zero(n)
    dj, dk = maps.h.target, maps.h_prime.target
    djk = maps.g.target
    deg_h, deg_hp = hom_bidegree(maps.h), hom_bidegree(maps.h_prime)
    deg_g = hom_bidegree(maps.g)
    s_j, s_k = _add_bidegree(bidegree, deg_h), _add_bidegree(bidegree, deg_hp)
    s_jk = _add_bidegree(s_j, deg_g)

    base = hom_slice(zero, maps.d, bidegree, max_unknowns)
    mid_j = hom_slice(zero, dj, s_j, max_unknowns)
    mid_k = hom_slice(zero, dk, s_k, max_unknowns)
    last = hom_slice(zero, djk, s_jk, max_unknowns)

    first_images = [
        {**_vectors([maps.h.compose(b)], 0)[0], **_vectors([maps.h_prime.compose(b)], 1)[0]} for b in base
    ]
    second_images = _vectors([maps.g.compose(b) for b in mid_j]) + _vectors(
        [maps.g_prime.compose(b) for b in mid_k]
    )
    h1 = (
        h1_slice(zero, maps.d, bidegree, max_unknowns)[1],
        h1_slice(zero, dj, s_j, max_unknowns)[1] + h1_slice(zero, dk, s_k, max_unknowns)[1],
        h1_slice(zero, djk, s_jk, max_unknowns)[1],
    )
    return SesSliceCheck(
        bidegree=bidegree,
        dims=(len(base), len(mid_j) + len(mid_k), len(last)),
        h1=h1,
        first_rank=_rank(first_images, field_),
        second_rank=_rank(second_images, field_),
    )


def _middle_slices(maps: SesMaps, bidegree: Bidegree) -> Tuple[Bidegree, Bidegree]:
    return (
        _add_bidegree(bidegree, hom_bidegree(maps.h)),
        _add_bidegree(bidegree, hom_bidegree(maps.h_prime)),
    )


def _pair_vector(a: SheafHom, b: SheafHom) -> Dict[Tuple[int, Any], CycNumber]:
    return {**_vectors([a], 0)[0], **_vectors([b], 1)[0]}


def _equations(
    columns: Sequence[Dict[Any, CycNumber]], target: Optional[Dict[Any, CycNumber]] = None
) -> List[FieldRow]:
    """
    One row per coordinate key; column r holds the key's value in columns[r]. A
    target adds a last column holding minus its values.
    """
    rows: Dict[Any, FieldRow] = {}
    for r, vec in enumerate(columns):
        for key, value in vec.items():
            rows.setdefault(key, {})[r] = value
    if target is not None:
        for key, value in target.items():
            rows.setdefault(key, {})[len(columns)] = -value
    return list(rows.values())


def _combine(homs: Sequence[SheafHom], coeffs: Sequence[CycNumber], source: DivisorData,
             target: DivisorData) -> SheafHom:
    total = SheafHom.zero(source, target)
    for h, c in zip(homs, coeffs):
        if not c.is_zero():
            total = total + h.scale(c)
    return total


def ses_middle_bases(
    maps: SesMaps, bidegree: Bidegree, max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS
) -> Tuple[List[SheafHom], List[SheafHom]]:
    """Bases of Hom(R, R(D+D_j)) and Hom(R, R(D+D_k)) in the slices fed by bidegree."""
    zero = DivisorData.zero(maps.d.n)
    s_j, s_k = _middle_slices(maps, bidegree)
    return (
        hom_slice(zero, maps.h.target, s_j, max_unknowns),
        hom_slice(zero, maps.h_prime.target, s_k, max_unknowns),
    )


def ses_middle_kernel(
    maps: SesMaps, bidegree: Bidegree, max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS
) -> List[Tuple[SheafHom, SheafHom]]:
    """Basis of the pairs (a, b) of the middle slice with g a + g' b = 0."""
    mid_j, mid_k = ses_middle_bases(maps, bidegree, max_unknowns)
    columns = _vectors([maps.g.compose(a) for a in mid_j]) + _vectors([maps.g_prime.compose(b) for b in mid_k])
    field_ = get_field(maps.d.n + 1)
    zero = DivisorData.zero(maps.d.n)
    split = len(mid_j)
    pairs = []
    for vec in field_kernel(_equations(columns), len(columns), field_):
        coeffs = [vec.get(r, field_.zero) for r in range(len(columns))]
        pairs.append((
            _combine(mid_j, coeffs[:split], zero, maps.h.target),
            _combine(mid_k, coeffs[split:], zero, maps.h_prime.target),
        ))
    return pairs


def ses_middle_preimage(
    maps: SesMaps,
    pair: Tuple[SheafHom, SheafHom],
    bidegree: Bidegree,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> Optional[SheafHom]:
    """
    Solve (h r, h' r) = pair for r in the bidegree slice of Hom(R, R(D)).

    Returns None when no such r exists.

    Raises:
        ValueError: when the pair does not map into R(D+D_j) + R(D+D_k)
    """
    a, b = pair
    if (a.target, b.target) != (maps.h.target, maps.h_prime.target):
        raise ValueError(f"Pair maps into {a.target.d} + {b.target.d}, not the middle term")
    zero = DivisorData.zero(maps.d.n)
    field_ = get_field(maps.d.n + 1)
    base = hom_slice(zero, maps.d, bidegree, max_unknowns)
    columns = [_pair_vector(maps.h.compose(r), maps.h_prime.compose(r)) for r in base]
    last = len(base)
    for vec in field_kernel(_equations(columns, _pair_vector(a, b)), last + 1, field_):
        pivot = vec.get(last)
        if pivot is None or pivot.is_zero():
            continue
        inverse = pivot.inverse()
        r = _combine(base, [vec.get(i, field_.zero) * inverse for i in range(last)], zero, maps.d)
        if maps.h.compose(r) == a and maps.h_prime.compose(r) == b:
            return r
        return None
    return None
