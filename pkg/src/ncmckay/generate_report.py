"""
Dimension Tables Module

Builds deterministic JSON tables of graded dimensions: Hom between two
summands of the tilting module, the first Cech group between them, and
the blocks e_i S e_j of the deformed algebra.
"""

import json
import logging
from collections import Counter
from typing import Any, Callable, Dict, Optional

from .cbh_algebra import s_graded_dim
from .nc_scheme import DEFAULT_MAX_UNKNOWNS, cech_h1_dim, hom_basis, hom_bidegree
from .tilting import twist

logger = logging.getLogger(__name__)

TABLE_KINDS = ("hom", "ext1", "s-block")


def _check_index(name: str, value: int, n: int) -> None:
    if not 0 <= value <= n:
        raise ValueError(f"{name} must lie in [0, {n}], got {value}")


def hom_dims_table(
    n: int,
    src: int,
    tgt: int,
    deg_xy: int,
    deg_t: int,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> Dict[str, Any]:
    """
    Dimensions of Hom(R(-D_src), R(-D_tgt)) per chart-0 bidegree.

    Returns:
        {"kind", "n", "src", "tgt", "bounds", "total", "slices"}
    """
    _check_index("src", src, n)
    _check_index("tgt", tgt, n)
    basis = hom_basis(twist(src, n), twist(tgt, n), deg_xy, deg_t, max_unknowns)
    counts = Counter(hom_bidegree(h) for h in basis)
    logger.info(f"Hom(R(-D_{src}), R(-D_{tgt})) n={n}: dimension {len(basis)} at bounds ({deg_xy}, {deg_t})")
    return {
        "kind": "hom",
        "n": n,
        "src": src,
        "tgt": tgt,
        "bounds": {"xy": deg_xy, "t": deg_t},
        "total": len(basis),
        "slices": [{"p": p, "w": w, "dim": dim} for (p, w), dim in sorted(counts.items())],
    }


def ext1_dims_table(
    n: int,
    src: int,
    tgt: int,
    deg_xy: int,
    deg_t: int,
    max_unknowns: Optional[int] = DEFAULT_MAX_UNKNOWNS,
) -> Dict[str, Any]:
    """First Cech group of Hom(R(-D_src), R(-D_tgt)), slice by slice."""
    _check_index("src", src, n)
    _check_index("tgt", tgt, n)
    report = cech_h1_dim(twist(src, n), twist(tgt, n), deg_xy, deg_t, max_unknowns)
    table = {"kind": "ext1", "n": n, "src": src, "tgt": tgt}
    table.update(report.to_dict())
    return table


def s_block_table(n: int, i: int, j: int, deg: int) -> Dict[str, Any]:
    """Graded dimensions of e_i S e_j for degrees 0..deg."""
    _check_index("i", i, n)
    _check_index("j", j, n)
    if deg < 0:
        raise ValueError(f"deg must be nonnegative, got {deg}")
    dims = [{"degree": d, "dim": s_graded_dim(i, j, d, n)} for d in range(deg + 1)]
    return {"kind": "s-block", "n": n, "i": i, "j": j, "deg": deg, "dims": dims}


def build_table(kind: str, **params: Any) -> Dict[str, Any]:
    """
    Dispatch on the table kind.

    Example:
        >>> build_table("s-block", n=1, i=0, j=0, deg=2)["dims"][2]
        {'degree': 2, 'dim': 3}
    """
    builders: Dict[str, Callable[..., Dict[str, Any]]] = {
        "hom": lambda n, src, tgt, deg_xy, deg_t, max_unknowns=DEFAULT_MAX_UNKNOWNS, **_:
            hom_dims_table(n, src, tgt, deg_xy, deg_t, max_unknowns),
        "ext1": lambda n, src, tgt, deg_xy, deg_t, max_unknowns=DEFAULT_MAX_UNKNOWNS, **_:
            ext1_dims_table(n, src, tgt, deg_xy, deg_t, max_unknowns),
        "s-block": lambda n, i, j, deg, **_: s_block_table(n, i, j, deg),
    }
    if kind not in builders:
        raise ValueError(f"Unknown table kind {kind!r}, expected one of {TABLE_KINDS}")
    return builders[kind](**params)


def serialize_table(table: Dict[str, Any]) -> str:
    return json.dumps(table, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def write_table(table: Dict[str, Any], path: str) -> str:
    json_str = serialize_table(table)
    with open(path, "w", encoding="utf-8") as f:
        f.write(json_str)
    logger.info(f"Table {table['kind']} written to {path}")
    return json_str
