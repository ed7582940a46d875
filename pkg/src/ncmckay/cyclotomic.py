"""
Cyclotomic Field Module

Exact arithmetic in the cyclotomic field Q(zeta) with zeta a primitive
(n+1)-th root of unity.

Elements are stored in the power basis 1, z, ..., z^(deg-1) of
Q[z]/(Phi_{n+1}(z)), where Phi_{n+1} is the true cyclotomic polynomial
(not z^(n+1) - 1), so zeta^j != 1 for 0 < j < n+1 is a genuine field fact.

Example:
    >>> field = get_field(4)
    >>> field.zeta_pow(2) == -1
    True
"""

from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Sequence, Tuple, Union

import sympy
from sympy import Poly, QQ

from .errors import RingMismatchError

Rational = Union[int, Fraction]

_Z = sympy.Symbol("z")


def _to_fraction(value: Any) -> Fraction:
    """Convert a sympy/QQ rational to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    return Fraction(int(value.numerator), int(value.denominator))


class CyclotomicField:
    """
    The field Q(zeta_order), order = n + 1 >= 1.
    """

    def __init__(self, order: int):
        if order < 1:
            raise ValueError(f"Cyclotomic order must be positive, got {order}")
        self.order = order
        self._phi = Poly(sympy.cyclotomic_poly(order, _Z), _Z, domain=QQ)
        self.degree = self._phi.degree()
        # low -> high, monic leading coefficient dropped
        coeffs = [_to_fraction(c) for c in reversed(self._phi.all_coeffs())]
        self.modulus: Tuple[Fraction, ...] = tuple(coeffs[:-1])
        self._powers = tuple(self._reduce([0] * e + [1]) for e in range(order))
        self.zero = CycNumber(self, (Fraction(0),) * self.degree)
        self.one = self.rational(1)

    def __repr__(self) -> str:
        return f"CyclotomicField(order={self.order})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("CyclotomicField", self.order))

    def _reduce(self, coeffs: Sequence[Rational]) -> Tuple[Fraction, ...]:
        """Reduce a coefficient list (low -> high) modulo Phi."""
        d = self.degree
        work = [Fraction(c) for c in coeffs]
        for k in range(len(work) - 1, d - 1, -1):
            c = work[k]
            if c:
                work[k] = Fraction(0)
                for r in range(d):
                    work[k - d + r] -= c * self.modulus[r]
        work = work[:d] + [Fraction(0)] * (d - len(work))
        return tuple(work)

    def rational(self, value: Rational) -> "CycNumber":
        return CycNumber(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def element(self, coeffs: Sequence[Rational]) -> "CycNumber":
        """Element from power-basis coefficients of any length (reduced)."""
        return CycNumber(self, self._reduce(coeffs))

    def zeta_pow(self, e: int) -> "CycNumber":
        """zeta^e, with e taken modulo the order."""
        return CycNumber(self, self._powers[e % self.order])

    def coerce(self, value: Any) -> "CycNumber":
        if isinstance(value, CycNumber):
            if value.field.order != self.order:
                raise RingMismatchError(
                    f"Cannot mix Q(zeta_{value.field.order}) with Q(zeta_{self.order})"
                )
            return value
        if isinstance(value, (int, Fraction)):
            return self.rational(value)
        raise TypeError(f"Cannot coerce {type(value).__name__} into {self!r}")


@lru_cache(maxsize=None)
def get_field(order: int) -> CyclotomicField:
    """Shared field instance for the given order."""
    return CyclotomicField(order)


class CycNumber:
    """
    An exact element of Q(zeta). Immutable.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: Tuple[Fraction, ...]):
        if len(coeffs) != field.degree:
            raise ValueError(
                f"Expected {field.degree} coefficients for {field!r}, got {len(coeffs)}"
            )
        self.field = field
        self.coeffs = coeffs

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------

    def _other(self, other: Any) -> "CycNumber":
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        if isinstance(other, CycNumber):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other: Any) -> "CycNumber":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other: Any) -> "CycNumber":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other: Any) -> "CycNumber":
        return (-self) + other

    def __mul__(self, other: Any) -> "CycNumber":
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.field, tuple(a * other for a in self.coeffs))
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            c = other.coeffs[0]
            return CycNumber(self.field, tuple(a * c for a in self.coeffs))
        if self.is_rational():
            c = self.coeffs[0]
            return CycNumber(self.field, tuple(c * b for b in other.coeffs))
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycNumber(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi."""
        if self.is_zero():
            raise ZeroDivisionError("Inverse of zero in a cyclotomic field")
        if self.is_rational():
            return self.field.rational(1 / self.coeffs[0])
        poly = Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
            _Z,
            domain=QQ,
        )
        inv = poly.invert(self.field._phi)
        return self.field.element([_to_fraction(c) for c in reversed(inv.all_coeffs())])

    def __truediv__(self, other: Any) -> "CycNumber":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "CycNumber":
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "CycNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycNumber):
            return other.field.order == self.field.order and other.coeffs == self.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.order, self.coeffs))

    def __repr__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*zeta")
            else:
                parts.append(f"{c}*zeta^{k}")
        return " + ".join(parts) if parts else "0"

    # -- linear algebra support -------------------------------------------

    def multiplication_matrix(self) -> List[List[Fraction]]:
        """Matrix M with M[r][s] = coefficient of z^r in self * z^s."""
        d = self.field.degree
        columns = [(self * self.field.element([0] * s + [1])).coeffs for s in range(d)]
        return [[columns[s][r] for s in range(d)] for r in range(d)]

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> List[List[str]]:
        return [[str(c.numerator), str(c.denominator)] for c in self.coeffs]

    @staticmethod
    def from_dict(field: CyclotomicField, data: List[List[str]]) -> "CycNumber":
        return field.element([Fraction(int(num), int(den)) for num, den in data])


def cyc_zeta_pow(e: int, n: int) -> CycNumber:
    """zeta^e in Q(zeta_{n+1})."""
    return get_field(n + 1).zeta_pow(e)


def root_of_unity_sum(i: int, n: int) -> CycNumber:
    """Sum_{j=0}^{n} zeta^(i*j); equals n+1 when i = 0 mod n+1 and 0 otherwise."""
    field = get_field(n + 1)
    total = field.zero
    for j in range(n + 1):
        total = total + field.zeta_pow(i * j)
    return total

