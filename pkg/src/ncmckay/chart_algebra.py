"""
Chart Algebra Module

PBW normal-form arithmetic in the deformed chart algebras

    R_i = k[t_0..t_n]<x_i, y_i> / (x_i y_i - y_i x_i - t_0)

and in the overlap algebras R_{i,i+1}, where x_i (equivalently y_{i+1})
is inverted, together with the transition maps between adjacent charts.

An overlap element can be written in either chart's generators. The
"lower" view uses x_i, y_i with x_i invertible; the "upper" view uses
x_{i+1}, y_{i+1} with y_{i+1} invertible. The two are related by

    x_{i+1} = x_i^2 y_i + t_{i+1} x_i,   y_{i+1} = x_i^{-1}
    x_i = y_{i+1}^{-1},                  y_i = y_{i+1}^2 x_{i+1} - t_{i+1} y_{i+1}

Monomials are stored as x^l y^m with x-powers left of y-powers. Products
of monomials use the closed form of repeated y x -> x y - t_0 rewriting:

    y^b x^c = Sum_k C(b,k) ff(c,k) (-t_0)^k x^(c-k) y^(b-k)    (b >= 0)
    y^b x^c = Sum_k C(c,k) ff(b,k) (-t_0)^k x^(c-k) y^(b-k)    (c >= 0)

where ff is the falling factorial. At most one of b, c is negative in
any single view, so one of the two formulas always applies.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .cyclotomic import CycNumber
from .errors import RingMismatchError
from .param_poly import ParamPoly, ParamRing, param_ring

logger = logging.getLogger(__name__)

Mono = Tuple[int, int]
Coeff = Union[int, Fraction, CycNumber, ParamPoly]

CHART = "chart"
OVERLAP = "overlap"


@dataclass(frozen=True)
class ChartRingId:
    """
    Identifies R_i (kind="chart", i) or R_{i,i+1} (kind="overlap", i) and the
    chart whose generators are used (coords).
    """

    kind: str
    i: int
    n: int
    coords: int

    def __post_init__(self):
        if self.kind == CHART:
            if not 0 <= self.i <= self.n or self.coords != self.i:
                raise ValueError(f"Invalid chart ring R_{self.i} for n={self.n}")
        elif self.kind == OVERLAP:
            if not 0 <= self.i < self.n or self.coords not in (self.i, self.i + 1):
                raise ValueError(f"Invalid overlap ring R_({self.i},{self.i + 1}) for n={self.n}")
        else:
            raise ValueError(f"Unknown ring kind {self.kind!r}")

    @classmethod
    def chart(cls, i: int, n: int) -> "ChartRingId":
        return cls(CHART, i, n, i)

    @classmethod
    def overlap(cls, i: int, n: int, coords: Optional[int] = None) -> "ChartRingId":
        return cls(OVERLAP, i, n, i if coords is None else coords)

    @property
    def is_overlap(self) -> bool:
        return self.kind == OVERLAP

    @property
    def is_lower_view(self) -> bool:
        return self.kind == OVERLAP and self.coords == self.i

    @property
    def is_upper_view(self) -> bool:
        return self.kind == OVERLAP and self.coords == self.i + 1

    def view(self, coords: int) -> "ChartRingId":
        return ChartRingId.overlap(self.i, self.n, coords)

    def admits(self, mono: Mono) -> bool:
        l, m = mono
        if self.kind == CHART:
            return l >= 0 and m >= 0
        if self.is_lower_view:
            return m >= 0
        return l >= 0

    def label(self) -> str:
        if self.kind == CHART:
            return f"R_{self.i}"
        return f"R_({self.i},{self.i + 1})[chart {self.coords}]"

    def to_dict(self) -> Dict[str, int]:
        return {"kind": self.kind, "i": self.i, "n": self.n, "coords": self.coords}


def torus_weights(chart: int, n: int) -> Tuple[int, int]:
    """Weights of (x_chart, y_chart); every t_j has weight 2."""
    return (1 - n + 2 * chart, n + 1 - 2 * chart)


def _falling(c: int, k: int) -> int:
    result = 1
    for r in range(k):
        result *= c - r
    return result


@lru_cache(maxsize=None)
def _commute_table(b: int, c: int) -> Tuple[Tuple[int, int], ...]:
    """Pairs (k, coefficient) with y^b x^c = Sum coefficient t_0^k x^(c-k) y^(b-k)."""
    if b >= 0:
        terms = [(k, comb(b, k) * _falling(c, k) * (-1) ** k) for k in range(b + 1)]
    elif c >= 0:
        terms = [(k, comb(c, k) * _falling(b, k) * (-1) ** k) for k in range(c + 1)]
    else:
        raise RingMismatchError("x and y cannot both be inverted in one coordinate view")
    return tuple((k, v) for k, v in terms if v)


class ChartElement:
    """
    An immutable element Sum c_{l,m} x^l y^m of a chart or overlap ring with
    T-parameter coefficients.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ChartRingId, terms: Dict[Mono, ParamPoly]):
        self.ring = ring
        clean = {}
        for mono, coeff in terms.items():
            if coeff:
                if not ring.admits(mono):
                    raise RingMismatchError(f"Monomial x^{mono[0]} y^{mono[1]} is not in {ring.label()}")
                clean[mono] = coeff
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring: ChartRingId) -> "ChartElement":
        return cls(ring, {})

    @classmethod
    def monomial(cls, ring: ChartRingId, l: int, m: int, coeff: Coeff = 1) -> "ChartElement":
        return cls(ring, {(l, m): _as_param(ring, coeff)})

    @classmethod
    def one(cls, ring: ChartRingId) -> "ChartElement":
        return cls.monomial(ring, 0, 0)

    @classmethod
    def constant(cls, ring: ChartRingId, coeff: Coeff) -> "ChartElement":
        return cls.monomial(ring, 0, 0, coeff)

    # -- inspection -----------------------------------------------------

    @property
    def params(self) -> ParamRing:
        return param_ring("T", self.ring.n)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, l: int, m: int) -> ParamPoly:
        return self.terms.get((l, m), self.params.zero())

    def sorted_terms(self) -> List[Tuple[Mono, ParamPoly]]:
        return sorted(self.terms.items())

    def min_x_power(self) -> int:
        return min((l for l, _ in self.terms), default=0)

    def min_y_power(self) -> int:
        return min((m for _, m in self.terms), default=0)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other: Any) -> "ChartElement":
        if isinstance(other, ChartElement):
            return other
        if isinstance(other, (int, Fraction, CycNumber, ParamPoly)):
            return ChartElement.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other: Any) -> "ChartElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = _common(self, other)
        terms = dict(a.terms)
        for mono, c in b.terms.items():
            terms[mono] = terms[mono] + c if mono in terms else c
        return ChartElement(a.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "ChartElement":
        return ChartElement(self.ring, {mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other: Any) -> "ChartElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "ChartElement":
        return (-self) + other

    def scale(self, c: Coeff) -> "ChartElement":
        """Multiply by a central parameter coefficient."""
        if isinstance(c, ParamPoly):
            return ChartElement(self.ring, {mono: v * c for mono, v in self.terms.items()})
        return ChartElement(self.ring, {mono: v.scale(c) for mono, v in self.terms.items()})

    def __mul__(self, other: Any) -> "ChartElement":
        if isinstance(other, (int, Fraction, CycNumber, ParamPoly)):
            return self.scale(other)
        if not isinstance(other, ChartElement):
            return NotImplemented
        a, b = _common(self, other)
        return _multiply(a, b)

    def __rmul__(self, other: Any) -> "ChartElement":
        if isinstance(other, (int, Fraction, CycNumber, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "ChartElement":
        if exponent < 0:
            raise ValueError("Use explicit inverse monomials for negative powers")
        result = ChartElement.one(self.ring)
        for _ in range(exponent):
            result = result * self
        return result

    # -- gradings -------------------------------------------------------

    def restrict_principal(self, degree: int) -> "ChartElement":
        return ChartElement(self.ring, {mono: c for mono, c in self.terms.items()
                                        if mono[0] - mono[1] == degree})

    def principal_degrees(self) -> List[int]:
        return sorted({l - m for l, m in self.terms})

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycNumber, ParamPoly)):
            return self == ChartElement.constant(self.ring, other)
        if isinstance(other, ChartElement):
            return other.ring == self.ring and other.terms == self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        c = self.ring.coords
        parts = []
        for (l, m), coeff in self.sorted_terms():
            mono = ""
            if l:
                mono += f"x{c}" + (f"^{l}" if l != 1 else "")
            if m:
                mono += ("*" if mono else "") + f"y{c}" + (f"^{m}" if m != 1 else "")
            if not mono:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    # -- serialization --------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": self.ring.to_dict(),
            "terms": [{"l": l, "m": m, "coeff": c.to_dict()} for (l, m), c in self.sorted_terms()],
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "ChartElement":
        ring_data = data["ring"]
        ring = ChartRingId(ring_data["kind"], ring_data["i"], ring_data["n"], ring_data["coords"])
        params = param_ring("T", ring.n)
        return ChartElement(
            ring,
            {(t["l"], t["m"]): ParamPoly.from_dict(params, t["coeff"]) for t in data["terms"]},
        )


def _as_param(ring: ChartRingId, coeff: Coeff) -> ParamPoly:
    params = param_ring("T", ring.n)
    if isinstance(coeff, ParamPoly):
        if coeff.ring != params:
            raise RingMismatchError(f"Chart coefficients must be in {params!r}, got {coeff.ring!r}")
        return coeff
    return params.constant(coeff)


def _multiply(a: ChartElement, b: ChartElement) -> ChartElement:
    """Product of two elements in the same ring and view."""
    t0 = tuple(1 if k == 0 else 0 for k in range(a.ring.n + 1))
    terms: Dict[Mono, ParamPoly] = {}
    for (l1, m1), c1 in a.terms.items():
        for (l2, m2), c2 in b.terms.items():
            base = c1 * c2
            for k, factor in _commute_table(m1, l2):
                mono = (l1 + l2 - k, m1 - k + m2)
                coeff = base.shift(tuple(k * e for e in t0), factor) if k else base.scale(factor)
                terms[mono] = terms[mono] + coeff if mono in terms else coeff
    return ChartElement(a.ring, terms)


def embed(e: ChartElement, target: ChartRingId) -> ChartElement:
    """
    Embed a chart element into an adjacent overlap ring (any view), or
    convert an overlap element between its two views.
    """
    if e.ring == target:
        return e
    if not target.is_overlap:
        raise RingMismatchError(f"Cannot embed {e.ring.label()} into chart ring {target.label()}")
    if e.ring.kind == CHART:
        if e.ring.i not in (target.i, target.i + 1):
            raise RingMismatchError(f"{e.ring.label()} is not adjacent to {target.label()}")
        e = ChartElement(target.view(e.ring.i), dict(e.terms))
    elif e.ring.i != target.i:
        raise RingMismatchError(f"{e.ring.label()} and {target.label()} are different overlaps")
    if e.ring.coords == target.coords:
        return e
    if target.is_lower_view:
        return transition_to_lower(e)
    return transition_to_upper(e)


def _common(a: ChartElement, b: ChartElement) -> Tuple[ChartElement, ChartElement]:
    if a.ring == b.ring:
        return a, b
    if a.ring.is_overlap:
        return a, embed(b, a.ring)
    if b.ring.is_overlap:
        return embed(a, b.ring), b
    raise RingMismatchError(f"Incompatible rings {a.ring.label()} and {b.ring.label()}")


def to_chart(e: ChartElement, chart: int) -> ChartElement:
    """
    Restrict an overlap element back to a chart ring; it must be written in
    that chart's generators with no inverted generator.
    """
    if e.ring.kind == CHART:
        if e.ring.i != chart:
            raise RingMismatchError(f"{e.ring.label()} is not chart {chart}")
        return e
    if e.ring.coords != chart:
        e = embed(e, e.ring.view(chart))
    return ChartElement(ChartRingId.chart(chart, e.ring.n), dict(e.terms))


# -- transitions ----------------------------------------------------------


@lru_cache(maxsize=None)
def _upper_x_image(n: int, i: int, power: int) -> ChartElement:
    """(x_i^2 y_i + t_{i+1} x_i)^power in the lower view of R_(i,i+1)."""
    ring = ChartRingId.overlap(i, n)
    params = param_ring("T", n)
    image = ChartElement(ring, {(2, 1): params.one(), (1, 0): params.var(i + 1)})
    result = ChartElement.one(ring)
    for _ in range(power):
        result = _multiply(result, image)
    return result


@lru_cache(maxsize=None)
def _lower_y_image(n: int, i: int, power: int) -> ChartElement:
    """(y_{i+1}^2 x_{i+1} - t_{i+1} y_{i+1})^power in the upper view of R_(i,i+1)."""
    ring = ChartRingId.overlap(i, n, i + 1)
    params = param_ring("T", n)
    image = ChartElement(ring, {(0, 1): -params.var(i + 1)}) + _multiply(
        ChartElement.monomial(ring, 0, 2), ChartElement.monomial(ring, 1, 0)
    )
    result = ChartElement.one(ring)
    for _ in range(power):
        result = _multiply(result, image)
    return result


def transition_to_lower(e: ChartElement) -> ChartElement:
    """
    Rewrite an element of R_{i+1} (or of R_(i,i+1) in chart-(i+1) generators)
    in the chart-i generators of R_(i,i+1).
    """
    ring = e.ring
    if ring.kind == CHART:
        if ring.i == 0:
            raise RingMismatchError("Chart 0 has no lower neighbour")
        i = ring.i - 1
    elif ring.is_upper_view:
        i = ring.i
    else:
        raise RingMismatchError(f"{ring.label()} is already in lower generators")
    target = ChartRingId.overlap(i, ring.n)
    result = ChartElement.zero(target)
    for (l, m), coeff in e.terms.items():
        image = _multiply(_upper_x_image(ring.n, i, l), ChartElement.monomial(target, -m, 0))
        result = result + image.scale(coeff)
    return result


def transition_to_upper(e: ChartElement) -> ChartElement:
    """
    Rewrite an element of R_i (or of R_(i,i+1) in chart-i generators) in the
    chart-(i+1) generators of R_(i,i+1).
    """
    ring = e.ring
    if ring.kind == CHART:
        if ring.i == ring.n:
            raise RingMismatchError(f"Chart {ring.n} has no upper neighbour")
        i = ring.i
    elif ring.is_lower_view:
        i = ring.i
    else:
        raise RingMismatchError(f"{ring.label()} is already in upper generators")
    target = ChartRingId.overlap(i, ring.n, i + 1)
    result = ChartElement.zero(target)
    for (l, m), coeff in e.terms.items():
        image = _multiply(ChartElement.monomial(target, 0, -l), _lower_y_image(ring.n, i, m))
        result = result + image.scale(coeff)
    return result


# -- normal forms -----------------------------------------------------------

_LETTERS = {"x": (1, 0), "y": (0, 1), "x^-1": (-1, 0), "y^-1": (0, -1)}


def normalize(raw: Iterable[Tuple[Coeff, Sequence[str]]], ring: ChartRingId) -> ChartElement:
    """
    Normal form of a formal sum of words in x, y, x^-1, y^-1.

    Args:
        raw: pairs (coefficient, word) where word is a sequence of letters
        ring: ring in whose generators the words are written

    Returns:
        ChartElement in PBW form

    Example:
        >>> ring = ChartRingId.chart(0, 1)
        >>> t0 = param_ring("T", 1).var(0)
        >>> normalize([(1, ["y", "x"])], ring) == normalize([(1, ["x", "y"]), (-t0, [])], ring)
        True
    """
    result = ChartElement.zero(ring)
    for coeff, word in raw:
        term = ChartElement.constant(ring, coeff)
        for letter in word:
            if letter not in _LETTERS:
                raise ValueError(f"Unknown letter {letter!r}")
            # admits() rejects inverses the ring does not have
            term = _multiply(term, ChartElement.monomial(ring, *_LETTERS[letter]))
        result = result + term
    return result


def principal_degree(e: ChartElement) -> Optional[int]:
    """deg x = 1, deg y = -1; None when e is zero or inhomogeneous."""
    degrees = e.principal_degrees()
    return degrees[0] if len(degrees) == 1 else None


def total_filtration_degree(e: ChartElement) -> Optional[int]:
    """deg x = deg y = 1 (x^-1 counts -1); None for zero."""
    return max((l + m for l, m in e.terms), default=None)


def leading_part(e: ChartElement, weights: Tuple[int, int] = (1, 1)) -> ChartElement:
    """Top slice of e for the weighting deg x = weights[0], deg y = weights[1]."""
    if not e.terms:
        return e
    wx, wy = weights
    top = max(wx * l + wy * m for l, m in e.terms)
    return ChartElement(e.ring, {mono: c for mono, c in e.terms.items()
                                 if wx * mono[0] + wy * mono[1] == top})


def leading_monomial(e: ChartElement) -> Tuple[Mono, ParamPoly]:
    """The unique top-filtration monomial of a principal-homogeneous element."""
    top = leading_part(e)
    if len(top.terms) != 1:
        raise ValueError(f"Element {e} has no unique leading monomial")
    return next(iter(top.terms.items()))
