"""
Exact Linear Algebra Module

Sparse kernels and ranks over Q and over Q(zeta).

Rational systems are reduced with sympy's sparse domain matrices (SDM)
over QQ. Systems with genuinely cyclotomic entries are realified: every
entry becomes its deg x deg multiplication matrix, so that
rank over Q(zeta) = rank over Q / deg.

Rows are sparse dicts {column: value}.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices.sdm import SDM

from .cyclotomic import CycNumber, CyclotomicField
from .errors import UnknownBudgetExceeded

logger = logging.getLogger(__name__)

RationalRow = Dict[int, Fraction]
FieldRow = Dict[int, CycNumber]


def _qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def check_budget(unknowns: int, limit: int) -> None:
    """Raise when a system has more unknowns than allowed."""
    if limit and unknowns > limit:
        raise UnknownBudgetExceeded(unknowns, limit)


def rational_rref(rows: Sequence[RationalRow], ncols: int) -> Tuple[List[RationalRow], List[int]]:
    """
    Reduced row echelon form over Q.

    Returns:
        (nonzero rref rows in pivot order, pivot columns)
    """
    dod = {}
    for r, row in enumerate(rows):
        entries = {c: _qq(v) for c, v in row.items() if v}
        if entries:
            dod[r] = entries
    if not dod or ncols == 0:
        return [], []
    matrix = SDM(dod, (len(rows), ncols), QQ)
    reduced, _ = matrix.rref()
    out_rows = []
    for r in sorted(reduced):
        out_rows.append({c: _fraction(v) for c, v in reduced[r].items() if v})
    out_rows = [row for row in out_rows if row]
    # the leading entry of each rref row is its pivot
    out_rows.sort(key=min)
    logger.debug(f"rref of {len(rows)}x{ncols} system has rank {len(out_rows)}")
    return out_rows, [min(row) for row in out_rows]


def rational_rank(rows: Sequence[RationalRow], ncols: int) -> int:
    return len(rational_rref(rows, ncols)[1])


def rational_kernel(rows: Sequence[RationalRow], ncols: int) -> List[RationalRow]:
    """Basis of {v : row . v = 0 for all rows}, one vector per free column."""
    reduced, pivots = rational_rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = {free: Fraction(1)}
        for row, p in zip(reduced, pivots):
            v = row.get(free)
            if v:
                vector[p] = -v
        basis.append(vector)
    return basis


def _all_rational(rows: Sequence[FieldRow]) -> bool:
    return all(v.is_rational() for row in rows for v in row.values())


def _realify(rows: Sequence[FieldRow], field: CyclotomicField) -> List[RationalRow]:
    d = field.degree
    out: List[RationalRow] = []
    for row in rows:
        blocks = {c: v.multiplication_matrix() for c, v in row.items() if v}
        for r in range(d):
            real_row: RationalRow = {}
            for c, block in blocks.items():
                for s in range(d):
                    value = block[r][s]
                    if value:
                        real_row[c * d + s] = value
            out.append(real_row)
    return out


def field_rank(rows: Sequence[FieldRow], ncols: int, field: CyclotomicField) -> int:
    """Rank over Q(zeta) of a sparse matrix with CycNumber entries."""
    if _all_rational(rows):
        return rational_rank(
            [{c: v.coeffs[0] for c, v in row.items() if v} for row in rows], ncols
        )
    rank = rational_rank(_realify(rows, field), ncols * field.degree)
    return rank // field.degree


def field_kernel(rows: Sequence[FieldRow], ncols: int, field: CyclotomicField) -> List[FieldRow]:
    """Basis over Q(zeta) of the kernel of a sparse matrix with CycNumber entries."""
    if _all_rational(rows):
        rational = rational_kernel(
            [{c: v.coeffs[0] for c, v in row.items() if v} for row in rows], ncols
        )
        return [{c: field.rational(v) for c, v in vec.items()} for vec in rational]
    d = field.degree
    spanning = []
    for vec in rational_kernel(_realify(rows, field), ncols * d):
        grouped: Dict[int, List[Fraction]] = {}
        for index, value in vec.items():
            grouped.setdefault(index // d, [Fraction(0)] * d)[index % d] = value
        spanning.append({c: field.element(coeffs) for c, coeffs in grouped.items()})
    # Q-spanning set of the Q(zeta)-kernel; keep a field basis
    basis: List[FieldRow] = []
    for vec in spanning:
        if field_rank(basis + [vec], ncols, field) > len(basis):
            basis.append(vec)
    return basis


def in_span(basis: Sequence[FieldRow], vector: FieldRow, ncols: int, field: CyclotomicField) -> bool:
    """Whether vector lies in the Q(zeta)-span of basis."""
    if not any(vector.values()):
        return True
    return field_rank(list(basis) + [vector], ncols, field) == field_rank(list(basis), ncols, field)
