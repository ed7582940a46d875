"""
Coordinate Converter Module

Converts parameter polynomials between the three deformation coordinate
systems used on the two sides of the correspondence:

- T: t_0, ..., t_n, the chart-algebra parameters
- W: w_0, ..., w_n, with w_0 = -(n-1)t_0 - t_1 - ... - t_n and w_j = t_0 + t_j
- S: s_0, ..., s_n, the discrete Fourier transform s_i = 1/(n+1) Sum_j zeta^(ij) w_j

Each converter takes a polynomial in the source system and returns the
same polynomial written in the target system. Internally it substitutes
the source variables by linear forms in the target variables.

Example:
    >>> t0 = param_ring("T", 2).var(0)
    >>> coord_w_from_t(t0)
    w0 + w1 + w2
"""

from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .errors import RingMismatchError
from .param_poly import ParamPoly, param_ring


def _require(p: ParamPoly, system: str) -> None:
    if p.ring.system != system:
        raise RingMismatchError(
            f"Expected a polynomial in the {system} system, got {p.ring.system}"
        )


@lru_cache(maxsize=None)
def w_forms_in_t(n: int) -> Tuple[ParamPoly, ...]:
    """w_j as linear forms in t."""
    T = param_ring("T", n)
    w0 = T.linear_form([-(n - 1)] + [-1] * n)
    forms = [w0] + [T.var(0) + T.var(j) for j in range(1, n + 1)]
    return tuple(forms)


@lru_cache(maxsize=None)
def t_forms_in_w(n: int) -> Tuple[ParamPoly, ...]:
    """t_k as linear forms in w; uses Sum_j w_j = t_0."""
    W = param_ring("W", n)
    total = W.linear_form([1] * (n + 1))
    return tuple([total] + [W.var(j) - total for j in range(1, n + 1)])


@lru_cache(maxsize=None)
def s_forms_in_w(n: int) -> Tuple[ParamPoly, ...]:
    """s_i = 1/(n+1) Sum_j zeta^(ij) w_j."""
    W = param_ring("W", n)
    zeta = W.field.zeta_pow
    scale = Fraction(1, n + 1)
    return tuple(
        W.linear_form([zeta(i * j) * scale for j in range(n + 1)]) for i in range(n + 1)
    )


@lru_cache(maxsize=None)
def w_forms_in_s(n: int) -> Tuple[ParamPoly, ...]:
    """w_j = Sum_i zeta^(-ij) s_i."""
    S = param_ring("S", n)
    zeta = S.field.zeta_pow
    return tuple(S.linear_form([zeta(-i * j) for i in range(n + 1)]) for j in range(n + 1))


def coord_w_from_t(p: ParamPoly) -> ParamPoly:
    """Rewrite a T-polynomial in the w coordinates."""
    _require(p, "T")
    return p.substitute(t_forms_in_w(p.ring.n))


def coord_t_from_w(p: ParamPoly) -> ParamPoly:
    """Rewrite a W-polynomial in the t coordinates."""
    _require(p, "W")
    return p.substitute(w_forms_in_t(p.ring.n))


def coord_s_from_w(p: ParamPoly) -> ParamPoly:
    """Rewrite a W-polynomial in the s coordinates."""
    _require(p, "W")
    return p.substitute(w_forms_in_s(p.ring.n))


def coord_w_from_s(p: ParamPoly) -> ParamPoly:
    """Rewrite an S-polynomial in the w coordinates."""
    _require(p, "S")
    return p.substitute(s_forms_in_w(p.ring.n))


def coord_t_from_s(p: ParamPoly) -> ParamPoly:
    """Composite S -> W -> T used to transport coefficients through phi."""
    return coord_t_from_w(coord_w_from_s(p))


def coord_s_from_t(p: ParamPoly) -> ParamPoly:
    return coord_s_from_w(coord_w_from_t(p))


def change_matrix(n: int) -> List[List[object]]:
    """
    Matrix of the composite T -> S change: row i holds the t-coefficients of s_i.

    Returns:
        (n+1) x (n+1) list of CycNumber
    """
    S = param_ring("S", n)
    field = S.field
    rows = []
    for i in range(n + 1):
        form = coord_t_from_s(S.var(i))
        row = []
        for k in range(n + 1):
            exps = tuple(1 if m == k else 0 for m in range(n + 1))
            row.append(form.terms.get(exps, field.zero))
        rows.append(row)
    return rows
