"""
CBH Algebra Module

PBW arithmetic in the deformed skew group algebra

    S = k[s_0..s_n]<u, v> # G / (u v - v u - Sum_i s_i g^i)

where G = Z/(n+1) acts by g u = zeta u g and g v = zeta^-1 v g.

Elements are stored in the normal form Sum c u^a v^b g^j with parameter
coefficients on the left and j reduced modulo n+1. Products of monomials
reduce to the ordered product v^b u^c, which satisfies

    v u^c = u^c v - Sum_i s_i (1 + zeta^i + ... + zeta^(i(c-1))) u^(c-1) g^i

and is memoized per (n, b, c).
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from .cyclotomic import CycNumber
from .errors import RingMismatchError
from .linalg import field_rank
from .param_poly import ParamPoly, param_ring

logger = logging.getLogger(__name__)

SMono = Tuple[int, int, int]
Scalar = Union[int, Fraction, CycNumber, ParamPoly]

LETTERS = ("u", "v", "g", "g^-1")


class SElement:
    """
    An immutable element of S in PBW normal form.

    Args:
        n: singularity index; G has order n+1
        terms: map (a, b, j) -> S-parameter polynomial for the term u^a v^b g^j
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[SMono, ParamPoly]):
        self.n = n
        ring = param_ring("S", n)
        clean: Dict[SMono, ParamPoly] = {}
        for (a, b, j), coeff in terms.items():
            if a < 0 or b < 0:
                raise ValueError(f"Negative exponent in u^{a} v^{b}")
            if coeff.ring != ring:
                raise RingMismatchError(f"S coefficients must be in {ring!r}, got {coeff.ring!r}")
            key = (a, b, j % (n + 1))
            clean[key] = clean[key] + coeff if key in clean else coeff
        self.terms = {key: c for key, c in clean.items() if c}

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SElement":
        return cls(n, {})

    @classmethod
    def monomial(cls, n: int, a: int, b: int, j: int = 0, coeff: Scalar = 1) -> "SElement":
        ring = param_ring("S", n)
        c = coeff if isinstance(coeff, ParamPoly) else ring.constant(coeff)
        return cls(n, {(a, b, j): c})

    @classmethod
    def one(cls, n: int) -> "SElement":
        return cls.monomial(n, 0, 0)

    @classmethod
    def scalar(cls, n: int, coeff: Scalar) -> "SElement":
        return cls.monomial(n, 0, 0, 0, coeff)

    # -- inspection -----------------------------------------------------

    @property
    def params(self):
        return param_ring("S", self.n)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """deg u = deg v = 1, deg g = deg s = 0; -1 for zero."""
        return max((a + b for a, b, _ in self.terms), default=-1)

    def homogeneous_part(self, degree: int) -> "SElement":
        return SElement(self.n, {key: c for key, c in self.terms.items() if key[0] + key[1] == degree})

    def top(self) -> "SElement":
        return self.homogeneous_part(self.degree())

    def sorted_terms(self) -> List[Tuple[SMono, ParamPoly]]:
        return sorted(self.terms.items(), reverse=True)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "SElement") -> None:
        if other.n != self.n:
            raise RingMismatchError(f"Cannot combine elements for n={self.n} and n={other.n}")

    def __add__(self, other: Any) -> "SElement":
        if isinstance(other, (int, Fraction, CycNumber, ParamPoly)):
            other = SElement.scalar(self.n, other)
        if not isinstance(other, SElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return SElement(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> "SElement":
        return SElement(self.n, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: Any) -> "SElement":
        return self + (-other)

    def __rsub__(self, other: Any) -> "SElement":
        return (-self) + other

    def scale(self, c: Scalar) -> "SElement":
        if isinstance(c, ParamPoly):
            return SElement(self.n, {key: v * c for key, v in self.terms.items()})
        return SElement(self.n, {key: v.scale(c) for key, v in self.terms.items()})

    def __mul__(self, other: Any) -> "SElement":
        if isinstance(other, (int, Fraction, CycNumber, ParamPoly)):
            return self.scale(other)
        if not isinstance(other, SElement):
            return NotImplemented
        self._check(other)
        return s_mul(self, other)

    def __rmul__(self, other: Any) -> "SElement":
        if isinstance(other, (int, Fraction, CycNumber, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "SElement":
        if exponent < 0:
            raise ValueError("Negative powers are only defined for g")
        result = SElement.one(self.n)
        for _ in range(exponent):
            result = result * self
        return result

    def map_coefficients(self, fn) -> "SElement":
        return SElement(self.n, {key: fn(c) for key, c in self.terms.items()})

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycNumber, ParamPoly)):
            return self == SElement.scalar(self.n, other)
        if isinstance(other, SElement):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, j), c in self.sorted_terms():
            letters = [f"u^{a}" if a > 1 else "u" * a, f"v^{b}" if b > 1 else "v" * b,
                       f"g^{j}" if j > 1 else "g" * j]
            mono = "*".join(x for x in letters if x)
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    # -- serialization --------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "terms": [{"u": a, "v": b, "g": j, "coeff": c.to_dict()} for (a, b, j), c in self.sorted_terms()],
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "SElement":
        n = data["n"]
        ring = param_ring("S", n)
        return SElement(
            n, {(t["u"], t["v"], t["g"]): ParamPoly.from_dict(ring, t["coeff"]) for t in data["terms"]}
        )


# -- products -------------------------------------------------------------------


def _add_into(terms: Dict[SMono, ParamPoly], key: SMono, coeff: ParamPoly) -> None:
    terms[key] = terms[key] + coeff if key in terms else coeff


@lru_cache(maxsize=None)
def _geometric(n: int, i: int, c: int) -> CycNumber:
    """1 + zeta^i + ... + zeta^(i(c-1))"""
    field = param_ring("S", n).field
    total = field.zero
    for r in range(c):
        total = total + field.zeta_pow(i * r)
    return total


@lru_cache(maxsize=None)
def ordered_product(n: int, b: int, c: int) -> Tuple[Tuple[SMono, ParamPoly], ...]:
    """Normal form of v^b u^c."""
    ring = param_ring("S", n)
    if b == 0 or c == 0:
        return (((c, b, 0), ring.one()),)
    terms: Dict[SMono, ParamPoly] = {}
    # (v^(b-1) u^c) v
    for (a2, b2, l), coeff in ordered_product(n, b - 1, c):
        _add_into(terms, (a2, b2 + 1, l), coeff.scale(ring.field.zeta_pow(-l)))
    # - Sum_i s_i C_i(c) (v^(b-1) u^(c-1)) g^i
    lower = ordered_product(n, b - 1, c - 1)
    for i in range(n + 1):
        factor = _geometric(n, i, c)
        if not factor:
            continue
        s_i = ring.var(i).scale(-factor)
        for (a2, b2, l), coeff in lower:
            _add_into(terms, (a2, b2, (l + i) % (n + 1)), coeff * s_i)
    return tuple((key, v) for key, v in terms.items() if v)


def s_mul(x: SElement, y: SElement) -> SElement:
    """(u^a v^b g^j)(u^c v^d g^k) = zeta^(j(c-d)) u^a (v^b u^c) v^d g^(j+k), where the group
    part of each term of v^b u^c still has to pass v^d."""
    n = x.n
    field = param_ring("S", n).field
    terms: Dict[SMono, ParamPoly] = {}
    for (a, b, j), c1 in x.terms.items():
        for (c, d, k), c2 in y.terms.items():
            base = (c1 * c2).scale(field.zeta_pow(j * (c - d)))
            for (a2, b2, l), coeff in ordered_product(n, b, c):
                # g^l v^d = zeta^(-ld) v^d g^l
                twisted = (base * coeff).scale(field.zeta_pow(-l * d)) if l and d else base * coeff
                _add_into(terms, (a + a2, b2 + d, (l + j + k) % (n + 1)), twisted)
    return SElement(n, terms)


def s_add(x: SElement, y: SElement) -> SElement:
    return x + y


def s_normalize(raw: Iterable[Tuple[Scalar, Sequence[str]]], n: int, fold: str = "left") -> SElement:
    """
    Normal form of a formal sum of words in u, v, g, g^-1.

    fold="right" multiplies each word from the right end first; both orders
    reach the same normal form.
    """
    if fold not in ("left", "right"):
        raise ValueError(f"Unknown fold {fold!r}")
    letters = {
        "u": generator_u(n),
        "v": generator_v(n),
        "g": generator_g(n),
        "g^-1": SElement.monomial(n, 0, 0, -1),
    }
    result = SElement.zero(n)
    for coeff, word in raw:
        for letter in word:
            if letter not in letters:
                raise ValueError(f"Unknown letter {letter!r}")
        factors = [letters[x] for x in word]
        term = SElement.scalar(n, coeff)
        if fold == "left":
            for f in factors:
                term = term * f
        else:
            acc = SElement.one(n)
            for f in reversed(factors):
                acc = f * acc
            term = term * acc
        result = result + term
    return result


# -- distinguished elements -----------------------------------------------------


def generator_u(n: int) -> SElement:
    return SElement.monomial(n, 1, 0)


def generator_v(n: int) -> SElement:
    return SElement.monomial(n, 0, 1)


def generator_g(n: int) -> SElement:
    return SElement.monomial(n, 0, 0, 1)


def defining_relation(n: int) -> SElement:
    """u v - v u - Sum_i s_i g^i computed by multiplication; vanishes in S."""
    u, v = generator_u(n), generator_v(n)
    ring = param_ring("S", n)
    sigma = SElement(n, {(0, 0, i): ring.var(i) for i in range(n + 1)})
    return u * v - v * u - sigma


@lru_cache(maxsize=None)
def make_es(i: int, n: int) -> SElement:
    """e_i = Sum_j zeta^(ij) g^j / (n+1)"""
    field = param_ring("S", n).field
    scale = Fraction(1, n + 1)
    return SElement(
        n,
        {(0, 0, j): param_ring("S", n).constant(field.zeta_pow(i * j) * scale) for j in range(n + 1)},
    )


def block(a: SElement, i: int, j: int) -> SElement:
    """e_i a e_j"""
    n = a.n
    return make_es(i % (n + 1), n) * a * make_es(j % (n + 1), n)


@lru_cache(maxsize=None)
def make_alpha_s(i: int, n: int) -> SElement:
    """alpha_{i,i+1} = e_i u e_{i+1}"""
    return block(generator_u(n), i, i + 1)


@lru_cache(maxsize=None)
def make_beta_s(i: int, n: int) -> SElement:
    """beta_{i+1,i} = e_{i+1} v e_i"""
    return block(generator_v(n), i + 1, i)


@lru_cache(maxsize=None)
def make_xyz_s(i: int, n: int) -> Tuple[SElement, SElement, SElement]:
    """(e u^(n+1) e, e v^(n+1) e, e u v e) for e = e_i."""
    u, v = generator_u(n), generator_v(n)
    return block(u ** (n + 1), i, i), block(v ** (n + 1), i, i), block(u * v, i, i)


def pbw_monomials(n: int, degree: int) -> List[SElement]:
    """u^a v^b g^j with a + b = degree; (degree+1)(n+1) of them."""
    return [
        SElement.monomial(n, a, degree - a, j)
        for a in range(degree + 1)
        for j in range(n + 1)
    ]


def coefficient_rows(elements: Sequence[SElement]) -> Tuple[List[Dict[int, CycNumber]], int]:
    """Rows over Q(zeta) indexed by (a, b, j, s-monomial)."""
    index: Dict[Any, int] = {}
    rows = []
    for el in elements:
        row = {}
        for key, coeff in el.terms.items():
            for exps, c in coeff.terms.items():
                row[index.setdefault(key + (exps,), len(index))] = c
        rows.append(row)
    return rows, len(index)


def s_graded_dim(i: int, j: int, degree: int, n: int) -> int:
    """Rank of the projections e_i m e_j of the degree-d PBW monomials m."""
    if degree < 0:
        raise ValueError("Degree must be nonnegative")
    projections = [block(m, i, j) for m in pbw_monomials(n, degree)]
    rows, ncols = coefficient_rows(projections)
    return field_rank(rows, ncols, param_ring("S", n).field)


def specialize(a: SElement, values: Dict[int, Scalar]) -> SElement:
    """Substitute s_k -> values[k] for the listed k; other parameters stay."""
    ring = param_ring("S", a.n)
    images = [
        ring.constant(values[k]) if k in values else ring.var(k)
        for k in range(ring.nvars)
    ]
    return a.map_coefficients(lambda c: c.substitute(images))
