"""
Tilting Module

The tilting module T = R + R(-D_1) + ... + R(-D_n) on the NC scheme and its
endomorphism algebra A = End(T), stored block-wise: block (i, j) of an
EndoElement is a morphism R(-D_j) -> R(-D_i). Block labels are taken
modulo n+1.

Also provides the division algorithm that writes any block morphism as a
combination of words in the generators e_i, alpha_{i,i+1}, beta_{i+1,i}
and the diagonal elements x_ii, y_ii, z_ii.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .chart_algebra import ChartElement, ChartRingId, leading_monomial, leading_part
from .coordinate_converter import w_forms_in_t
from .cyclotomic import CycNumber
from .errors import ReductionError
from .nc_scheme import DEFAULT_MAX_UNKNOWNS, DivisorData, SheafHom, hom_basis
from .param_poly import ParamPoly, param_ring

logger = logging.getLogger(__name__)

Block = Tuple[int, int]
Generator = Tuple[str, int]
Scalar = Union[int, CycNumber, ParamPoly]


def twist(i: int, n: int) -> DivisorData:
    """Twist of the summand R(-D_i); R(-D_0) = R."""
    return DivisorData.minus_prime(i % (n + 1), n)


class EndoElement:
    """
    An element of A = End(T) as a sparse map from blocks (i, j) to morphisms
    R(-D_j) -> R(-D_i). Missing blocks are zero.
    """

    __slots__ = ("n", "blocks")

    def __init__(self, n: int, blocks: Dict[Block, SheafHom]):
        self.n = n
        clean = {}
        for (i, j), h in blocks.items():
            i, j = i % (n + 1), j % (n + 1)
            if (h.source, h.target) != (twist(j, n), twist(i, n)):
                raise ValueError(f"Block ({i},{j}) holds a morphism {h.source.d} -> {h.target.d}")
            if not h.is_zero():
                clean[(i, j)] = clean[(i, j)] + h if (i, j) in clean else h
        self.blocks = {key: h for key, h in clean.items() if not h.is_zero()}

    @classmethod
    def zero(cls, n: int) -> "EndoElement":
        return cls(n, {})

    @classmethod
    def from_block(cls, i: int, j: int, h: SheafHom) -> "EndoElement":
        return cls(h.n, {(i, j): h})

    def block(self, i: int, j: int) -> SheafHom:
        i, j = i % (self.n + 1), j % (self.n + 1)
        if (i, j) in self.blocks:
            return self.blocks[(i, j)]
        return SheafHom.zero(twist(j, self.n), twist(i, self.n))

    def is_zero(self) -> bool:
        return not self.blocks

    def __add__(self, other: "EndoElement") -> "EndoElement":
        blocks = dict(self.blocks)
        for key, h in other.blocks.items():
            blocks[key] = blocks[key] + h if key in blocks else h
        return EndoElement(self.n, blocks)

    def __neg__(self) -> "EndoElement":
        return EndoElement(self.n, {key: -h for key, h in self.blocks.items()})

    def __sub__(self, other: "EndoElement") -> "EndoElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "EndoElement":
        """Multiply by a central scalar or T-parameter polynomial."""
        return EndoElement(self.n, {key: h.scale(c) for key, h in self.blocks.items()})

    def __mul__(self, other: Any) -> "EndoElement":
        if isinstance(other, (int, CycNumber, ParamPoly)):
            return self.scale(other)
        if not isinstance(other, EndoElement):
            return NotImplemented
        blocks: Dict[Block, SheafHom] = {}
        for (i, k), a in self.blocks.items():
            for (k2, j), b in other.blocks.items():
                if k != k2:
                    continue
                prod = a.compose(b)
                blocks[(i, j)] = blocks[(i, j)] + prod if (i, j) in blocks else prod
        return EndoElement(self.n, blocks)

    def __rmul__(self, other: Any) -> "EndoElement":
        if isinstance(other, (int, CycNumber, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "EndoElement":
        if exponent < 0:
            raise ValueError("Negative powers are not defined in End(T)")
        result = identity(self.n)
        for _ in range(exponent):
            result = result * self
        return result

    def glue_check(self) -> Tuple[bool, Optional[Block]]:
        for key in sorted(self.blocks):
            ok, _ = self.blocks[key].glue_check()
            if not ok:
                return False, key
        return True, None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EndoElement):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.blocks.items())))

    def __repr__(self) -> str:
        if not self.blocks:
            return "EndoElement(0)"
        parts = [f"({i},{j}): {h.components[0]!r}" for (i, j), h in sorted(self.blocks.items())]
        return "EndoElement{" + ", ".join(parts) + "}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "blocks": [{"i": i, "j": j, "hom": h.to_dict()} for (i, j), h in sorted(self.blocks.items())],
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "EndoElement":
        return EndoElement(
            data["n"], {(b["i"], b["j"]): SheafHom.from_dict(b["hom"]) for b in data["blocks"]}
        )


# -- distinguished elements -----------------------------------------------------


def _chart(k: int, n: int) -> ChartRingId:
    return ChartRingId.chart(k, n)


def _xy_plus(k: int, n: int, constant: ParamPoly) -> ChartElement:
    """x_k y_k + constant in chart k."""
    ring = _chart(k, n)
    return ChartElement.monomial(ring, 1, 1) + ChartElement.constant(ring, constant)


@lru_cache(maxsize=None)
def make_idempotent(i: int, n: int) -> EndoElement:
    """Projection e_i onto the summand R(-D_i)."""
    if not 0 <= i <= n:
        raise IndexError(f"Idempotent index {i} out of range for n={n}")
    return EndoElement.from_block(i, i, SheafHom.identity(twist(i, n)))


@lru_cache(maxsize=None)
def identity(n: int) -> EndoElement:
    return EndoElement(n, {(i, i): SheafHom.identity(twist(i, n)) for i in range(n + 1)})


@lru_cache(maxsize=None)
def alpha_hom(i: int, n: int) -> SheafHom:
    """
    alpha_{i,i+1}: R(-D_{i+1}) -> R(-D_i) with components

        x_k y_k + (i-k-1) t_0 + t_{k+1} + ... + t_i   (k < i)
        x_i                                           (k = i)
        1                                             (k > i)
    """
    T = param_ring("T", n)
    comps = []
    for k in range(n + 1):
        if k < i:
            const = T.var(0).scale(i - k - 1)
            for l in range(k + 1, i + 1):
                const = const + T.var(l)
            comps.append(_xy_plus(k, n, const))
        elif k == i:
            comps.append(ChartElement.monomial(_chart(k, n), 1, 0))
        else:
            comps.append(ChartElement.one(_chart(k, n)))
    return SheafHom(twist(i + 1, n), twist(i, n), comps)


@lru_cache(maxsize=None)
def beta_hom(i: int, n: int) -> SheafHom:
    """
    beta_{i+1,i}: R(-D_i) -> R(-D_{i+1}) with components

        1                                             (k < i)
        y_i                                           (k = i)
        x_k y_k - (k-i) t_0 - t_{i+1} - ... - t_k     (k > i)
    """
    T = param_ring("T", n)
    comps = []
    for k in range(n + 1):
        if k < i:
            comps.append(ChartElement.one(_chart(k, n)))
        elif k == i:
            comps.append(ChartElement.monomial(_chart(k, n), 0, 1))
        else:
            const = T.var(0).scale(-(k - i))
            for l in range(i + 1, k + 1):
                const = const - T.var(l)
            comps.append(_xy_plus(k, n, const))
    return SheafHom(twist(i, n), twist(i + 1, n), comps)


def make_alpha(i: int, n: int) -> EndoElement:
    return EndoElement.from_block(i, i + 1, alpha_hom(i, n))


def make_beta(i: int, n: int) -> EndoElement:
    return EndoElement.from_block(i + 1, i, beta_hom(i, n))


@lru_cache(maxsize=None)
def make_u(n: int) -> EndoElement:
    """u = Sum_i alpha_{i,i+1}"""
    return EndoElement(n, {(i, i + 1): alpha_hom(i, n) for i in range(n + 1)})


@lru_cache(maxsize=None)
def make_v(n: int) -> EndoElement:
    """v = Sum_i beta_{i+1,i}"""
    return EndoElement(n, {(i + 1, i): beta_hom(i, n) for i in range(n + 1)})


@lru_cache(maxsize=None)
def make_g(n: int) -> EndoElement:
    """g = Sum_i zeta^(-i) e_i"""
    field_ = param_ring("T", n).field
    return EndoElement(
        n, {(i, i): SheafHom.identity(twist(i, n)).scale(field_.zeta_pow(-i)) for i in range(n + 1)}
    )


@lru_cache(maxsize=None)
def make_xyz(i: int, n: int) -> Tuple[EndoElement, EndoElement, EndoElement]:
    """(x_ii, y_ii, z_ii) = (e_i u^(n+1) e_i, e_i v^(n+1) e_i, e_i u v e_i)."""
    e = make_idempotent(i, n)
    u, v = make_u(n), make_v(n)
    return e * u ** (n + 1) * e, e * v ** (n + 1) * e, e * u * v * e


def matrix_form_chart0(a: EndoElement) -> List[List[ChartElement]]:
    """Chart-0 components of every block, as an (n+1) x (n+1) matrix."""
    n = a.n
    return [[a.block(i, j).components[0] for j in range(n + 1)] for i in range(n + 1)]


def weight_diagonal(n: int) -> EndoElement:
    """Sum_j w_j e_j with the w_j written in t; equals uv - vu."""
    forms = w_forms_in_t(n)
    return EndoElement(
        n, {(j, j): SheafHom.identity(twist(j, n)).scale(forms[j]) for j in range(n + 1)}
    )


def block_hom_basis(
    i: int,
    j: int,
    n: int,
    deg_bound_xy: int,
    deg_bound_t: int,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> List[SheafHom]:
    """Basis of the block A_{i,j} = Hom(R(-D_j), R(-D_i)) within bounds."""
    return hom_basis(twist(j, n), twist(i, n), deg_bound_xy, deg_bound_t, max_unknowns)


# -- generator words ------------------------------------------------------------


def beta_word(i: int, j: int, n: int) -> Tuple[Generator, ...]:
    """beta_{i,i-1} ... beta_{j+1,j}, labelled by the lower index of each arrow."""
    steps = (i - j) % (n + 1)
    return tuple(("beta", (i - 1 - s) % (n + 1)) for s in range(steps))


def alpha_word(i: int, j: int, n: int) -> Tuple[Generator, ...]:
    """alpha_{i,i+1} ... alpha_{j-1,j}, labelled by the lower index of each arrow."""
    steps = (j - i) % (n + 1)
    return tuple(("alpha", (i + s) % (n + 1)) for s in range(steps))


def generator_element(gen: Generator, n: int) -> EndoElement:
    kind, k = gen
    if kind == "e":
        return make_idempotent(k, n)
    if kind == "alpha":
        return make_alpha(k, n)
    if kind == "beta":
        return make_beta(k, n)
    x, y, z = make_xyz(k, n)
    return {"x": x, "y": y, "z": z}[kind]


def word_element(word: Sequence[Generator], n: int) -> EndoElement:
    if not word:
        raise ValueError("Empty generator word; use ('e', i)")
    result = generator_element(word[0], n)
    for gen in word[1:]:
        result = result * generator_element(gen, n)
    return result


@dataclass
class GeneratorTerm:
    """coeff * word, with coeff a T-parameter polynomial."""

    coeff: ParamPoly
    word: Tuple[Generator, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"coeff": self.coeff.to_dict(), "word": [list(g) for g in self.word]}


@dataclass
class Reduction:
    block: Block
    terms: List[GeneratorTerm] = field(default_factory=list)
    remainder: Optional[SheafHom] = None
    steps: int = 0

    @property
    def complete(self) -> bool:
        return self.remainder is not None and self.remainder.is_zero()

    def evaluate(self, n: int) -> SheafHom:
        i, j = self.block
        total = SheafHom.zero(twist(j, n), twist(i, n))
        for term in self.terms:
            total = total + word_element(term.word, n).block(i, j).scale(term.coeff)
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {
            "block": list(self.block),
            "terms": [t.to_dict() for t in self.terms],
            "complete": self.complete,
            "steps": self.steps,
        }


def infer_block(h: SheafHom) -> Block:
    """(i, j) with h: R(-D_j) -> R(-D_i)."""
    n = h.n

    def index(d: DivisorData) -> int:
        for k in range(n + 1):
            if d == twist(k, n):
                return k
        raise ValueError(f"{d.d} is not a summand of the tilting module")

    return index(h.target), index(h.source)


def _leading_chart_word(i: int, j: int, n: int, p0: int) -> Tuple[int, Tuple[Generator, ...], int, str]:
    """
    Chart used to peel a principal part of chart-0 degree p0 in block (i, j),
    the connecting word and the power of y_0 (chart 0) or x_n (chart n) it
    contributes there.
    """
    if i == j:
        word: Tuple[Generator, ...] = ()
        if p0 <= 0:
            return 0, word, 0, "y"
        return n, word, 0, "x"
    b_word = beta_word(i, j, n)
    w0 = 1 if ("beta", 0) in b_word else 0
    if p0 <= -w0:
        return 0, b_word, w0, "y"
    a_word = alpha_word(i, j, n)
    e = 1 if ("alpha", n) in a_word else 0
    return n, a_word, e, "x"


def reduce_to_generators(h: SheafHom, max_steps: Optional[int] = None) -> Reduction:
    """
    Division algorithm for a block morphism.

    Each principal-degree part is peeled from its leading term: on chart 0
    the term x^b y^(b+c) is matched by z^b y^(c-w) beta-word, on chart n the
    term x^(b+c) y^b by z^b x^(c-e) alpha-word, all at the target index.

    Raises:
        ReductionError: when the step guard is exceeded or a leading
            coefficient cannot be matched
    """
    n = h.n
    i, j = infer_block(h)
    result = Reduction((i, j))
    remainder = h
    guard = max_steps
    if guard is None:
        size = max((l + m for c in h.components for (l, m) in c.terms), default=0)
        guard = 4 * (size + 2) * max(1, len(h.components[0].principal_degrees()))

    while not remainder.is_zero():
        if result.steps >= guard:
            raise ReductionError(f"Reduction of block ({i},{j}) exceeded {guard} steps", hom=h)
        result.steps += 1
        parts = remainder.homogeneous_parts()
        p0 = min(parts)
        part = parts[p0]
        chart, word, offset, letter = _leading_chart_word(i, j, n, p0)
        (l, m), coeff = leading_monomial(part.components[chart])
        b = min(l, m)
        c = (m - l if letter == "y" else l - m) - offset
        if c < 0:
            raise ReductionError(
                f"Leading term x^{l} y^{m} on chart {chart} is not reachable in block ({i},{j})", hom=h
            )
        full = (("z", i),) * b + ((letter, i),) * c + word
        if not full:
            full = (("e", i),)
        candidate = word_element(full, n).block(i, j)
        (cl, cm), lead = leading_monomial(candidate.components[chart])
        if (cl, cm) != (l, m) or not lead.is_constant():
            raise ReductionError(f"Word {full} does not lead with x^{l} y^{m} on chart {chart}", hom=h)
        factor = coeff.scale(lead.constant_value().inverse())
        result.terms.append(GeneratorTerm(factor, full))
        remainder = remainder - candidate.scale(factor)
        logger.debug(f"Block ({i},{j}) step {result.steps}: peeled {full} at x^{l} y^{m}")

    result.remainder = remainder
    return result


def leading_relation_holds(n: int) -> bool:
    """Top terms of x_00 y_00 and z_00^(n+1) agree on chart 0 under weights (1-n, n+1)."""
    x, y, z = make_xyz(0, n)
    weights = (1 - n, n + 1)
    lhs = (x * y).block(0, 0).components[0]
    rhs = (z ** (n + 1)).block(0, 0).components[0]
    return leading_part(lhs, weights) == leading_part(rhs, weights)
