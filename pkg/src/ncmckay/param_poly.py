"""
Parameter Polynomial Module

Commutative polynomials in the deformation parameters t_0..t_n, s_0..s_n
or w_0..w_n with coefficients in Q(zeta_{n+1}).

A ParamPoly stores a map from exponent vectors to CycNumber with zero
coefficients pruned, so equality of canonical forms is equality of
polynomials.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from .cyclotomic import CycNumber, CyclotomicField, get_field
from .errors import RingMismatchError

Exps = Tuple[int, ...]
Scalar = Union[int, Fraction, CycNumber]

SYSTEMS = ("T", "S", "W")


class ParamRing:
    """
    The polynomial ring Q(zeta)[p_0, ..., p_n] for one parameter system.

    Args:
        system: "T", "S" or "W"
        n: singularity index; the ring has n+1 variables
    """

    def __init__(self, system: str, n: int):
        if system not in SYSTEMS:
            raise ValueError(f"Unknown parameter system {system!r}, expected one of {SYSTEMS}")
        if n < 0:
            raise ValueError(f"Singularity index must be nonnegative, got {n}")
        self.system = system
        self.n = n
        self.nvars = n + 1
        self.field: CyclotomicField = get_field(n + 1)
        self.prefix = system.lower()
        self._zero_exps: Exps = (0,) * self.nvars

    def __repr__(self) -> str:
        return f"ParamRing({self.system!r}, n={self.n})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParamRing) and (other.system, other.n) == (self.system, self.n)

    def __hash__(self) -> int:
        return hash(("ParamRing", self.system, self.n))

    def zero(self) -> "ParamPoly":
        return ParamPoly(self, {})

    def one(self) -> "ParamPoly":
        return self.constant(1)

    def constant(self, value: Scalar) -> "ParamPoly":
        c = self.field.coerce(value)
        return ParamPoly(self, {self._zero_exps: c} if c else {})

    def var(self, k: int) -> "ParamPoly":
        if not 0 <= k < self.nvars:
            raise IndexError(f"{self.prefix}_{k} out of range for n={self.n}")
        exps = tuple(1 if i == k else 0 for i in range(self.nvars))
        return ParamPoly(self, {exps: self.field.one})

    def monomial(self, exps: Exps, coeff: Scalar = 1) -> "ParamPoly":
        c = self.field.coerce(coeff)
        return ParamPoly(self, {tuple(exps): c} if c else {})

    def linear_form(self, coeffs: Sequence[Scalar]) -> "ParamPoly":
        """Sum_k coeffs[k] * p_k."""
        total = self.zero()
        for k, c in enumerate(coeffs):
            if c:
                total = total + self.var(k) * c
        return total

    def monomials_of_degree(self, degree: int) -> List[Exps]:
        """All exponent vectors of the given total degree, graded-lex order."""
        result = []
        for combo in combinations_with_replacement(range(self.nvars), degree):
            exps = [0] * self.nvars
            for k in combo:
                exps[k] += 1
            result.append(tuple(exps))
        return sorted(result, reverse=True)

    def monomials_up_to(self, degree: int) -> List[Exps]:
        result: List[Exps] = []
        for d in range(degree + 1):
            result.extend(self.monomials_of_degree(d))
        return result


@lru_cache(maxsize=None)
def param_ring(system: str, n: int) -> ParamRing:
    """Shared ring instance for (system, n)."""
    return ParamRing(system, n)


def _add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def graded_lex_key(exps: Exps) -> Tuple[int, Exps]:
    return (sum(exps), exps)


class ParamPoly:
    """
    Immutable polynomial over a ParamRing.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ParamRing, terms: Dict[Exps, CycNumber]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exps in self.terms)

    def constant_value(self) -> CycNumber:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.ring._zero_exps, self.ring.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> List[Tuple[Exps, CycNumber]]:
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda item: graded_lex_key(item[0]), reverse=True)

    def __iter__(self) -> Iterator[Tuple[Exps, CycNumber]]:
        return iter(self.sorted_terms())

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "ParamPoly") -> None:
        if other.ring != self.ring:
            raise RingMismatchError(
                f"Cannot combine polynomials in {self.ring!r} and {other.ring!r}"
            )

    def _lift(self, other: Any) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CycNumber)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other: Any) -> "ParamPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return ParamPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Any) -> "ParamPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "ParamPoly":
        return (-self) + other

    def scale(self, c: Scalar) -> "ParamPoly":
        if not c:
            return self.ring.zero()
        return ParamPoly(self.ring, {e: v * c for e, v in self.terms.items()})

    def shift(self, exps: Exps, c: Scalar = 1) -> "ParamPoly":
        """Multiply by the monomial c * p^exps."""
        if not c:
            return self.ring.zero()
        return ParamPoly(self.ring, {_add_exps(e, exps): v * c for e, v in self.terms.items()})

    def __mul__(self, other: Any) -> "ParamPoly":
        if isinstance(other, (int, Fraction, CycNumber)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_constant():
            return self.scale(other.constant_value())
        if self.is_constant():
            return other.scale(self.constant_value())
        terms: Dict[Exps, CycNumber] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                v = c1 * c2
                terms[e] = terms[e] + v if e in terms else v
        return ParamPoly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ParamPoly":
        if exponent < 0:
            raise ValueError("Negative powers of parameter polynomials are not defined")
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    # -- substitution ---------------------------------------------------

    def substitute(self, images: Sequence["ParamPoly"]) -> "ParamPoly":
        """Replace variable k by images[k]; the result lives in the images' ring."""
        if len(images) != self.ring.nvars:
            raise ValueError(f"Expected {self.ring.nvars} images, got {len(images)}")
        target = images[0].ring
        result = target.zero()
        powers: Dict[Tuple[int, int], ParamPoly] = {}
        for exps, c in self.terms.items():
            term = target.constant(c)
            for k, e in enumerate(exps):
                if e:
                    if (k, e) not in powers:
                        powers[(k, e)] = images[k] ** e
                    term = term * powers[(k, e)]
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar]) -> CycNumber:
        """Value at a point of Q(zeta)^(n+1)."""
        field = self.ring.field
        total = field.zero
        for exps, c in self.terms.items():
            value = c
            for k, e in enumerate(exps):
                if e:
                    value = value * (field.coerce(point[k]) ** e)
            total = total + value
        return total

    def coefficient(self, exps: Exps) -> CycNumber:
        return self.terms.get(tuple(exps), self.ring.field.zero)

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycNumber)):
            return self == self.ring.constant(other)
        if isinstance(other, ParamPoly):
            return other.ring == self.ring and other.terms == self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.system, self.ring.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"{self.ring.prefix}{k}" + (f"^{e}" if e > 1 else "")
                for k, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    # -- serialization --------------------------------------------------

    def to_dict(self) -> List[Dict[str, Any]]:
        return [{"exps": list(e), "coeff": c.to_dict()} for e, c in self.sorted_terms()]

    @staticmethod
    def from_dict(ring: ParamRing, data: Iterable[Dict[str, Any]]) -> "ParamPoly":
        return ParamPoly(
            ring,
            {tuple(item["exps"]): CycNumber.from_dict(ring.field, item["coeff"]) for item in data},
        )
