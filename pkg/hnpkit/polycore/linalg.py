"""Sparse Gauss-Jordan elimination over a field (Fraction or PrimeFieldElem entries).

Vectors are dicts column -> nonzero entry.
"""

from collections.abc import Callable, Iterable
from fractions import Fraction
from typing import Any

Vector = dict[int, Any]


def _axpy(target: Vector, factor: Any, row: Vector) -> None:
    """target -= factor * row, in place."""
    for col, v in row.items():
        new = target.get(col, 0) - factor * v
        if new:
            target[col] = new
        else:
            target.pop(col, None)


def reduce_vector(vec: Vector, pivots: dict[int, Vector]) -> Vector:
    """Reduce vec against fully reduced pivot rows (each pivot entry is 1)."""
    out = {c: v for c, v in vec.items() if v}
    for col in [c for c in out if c in pivots]:
        factor = out.get(col)
        if factor:
            _axpy(out, factor, pivots[col])
    return out


def row_reduce(rows: Iterable[Vector]) -> dict[int, Vector]:
    """Reduced row echelon form, returned as pivot column -> normalized row.

    The pivot of a row is its smallest column, so columns listed last are
    pivots only when they must be.
    """
    pivots: dict[int, Vector] = {}
    for row in rows:
        r = reduce_vector(row, pivots)
        if not r:
            continue
        col = min(r)
        inv = Fraction(1) / r[col]
        r = {c: v * inv for c, v in r.items()}
        for prow in pivots.values():
            factor = prow.get(col)
            if factor:
                _axpy(prow, factor, r)
        pivots[col] = r
    return pivots


def in_row_space(vec: Vector, pivots: dict[int, Vector]) -> bool:
    return not reduce_vector(vec, pivots)


def rank(rows: Iterable[Vector]) -> int:
    return len(row_reduce(rows))


def kernel_vector(
    pivots: dict[int, Vector],
    ncols: int,
    wanted: Callable[[int], bool],
) -> Vector | None:
    """A kernel vector of the reduced matrix with a nonzero entry in some wanted column.

    The kernel is spanned by one vector per free column; if none of those has a
    wanted entry, no kernel vector does.
    """
    by_free: dict[int, list[tuple[int, Any]]] = {}
    for pcol, prow in pivots.items():
        for col, v in prow.items():
            if col != pcol:
                by_free.setdefault(col, []).append((pcol, v))
    for free in range(ncols):
        if free in pivots:
            continue
        vec: Vector = {free: 1}
        for pcol, v in by_free.get(free, []):
            vec[pcol] = -v
        if any(wanted(c) for c in vec):
            return vec
    return None
