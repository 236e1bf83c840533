"""Sylvester resultants and discriminants by fraction-free elimination."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

from hnpkit.algebraic.univariate import (
    UnivarPoly,
    clear_coefficient_denominators,
    field_div,
    has_fraction_coefficients,
    parameter_count,
    polynomial_quotient,
)
from hnpkit.errors import UsageError
from hnpkit.polycore.polynomial import Polynomial, coeff_exact_div, normalize_scalar


def sylvester_matrix(p: UnivarPoly, q: UnivarPoly) -> list[list[Any]]:
    """(deg p + deg q)-square matrix; rows list coefficients leading term first."""
    if not p or not q:
        raise UsageError("the Sylvester matrix of a zero polynomial is undefined")
    N, M = len(p) - 1, len(q) - 1
    size = N + M
    rows: list[list[Any]] = []
    for coeffs, shifts in ((p.coeffs, M), (q.coeffs, N)):
        lead_first = list(reversed(coeffs))
        for i in range(shifts):
            row: list[Any] = [0] * size
            row[i : i + len(lead_first)] = lead_first
            rows.append(row)
    return rows


def bareiss_determinant(matrix: Sequence[Sequence[Any]]) -> Any:
    """Determinant over an integral domain; every intermediate division is exact."""
    n = len(matrix)
    if n == 0:
        return 1
    M = [list(row) for row in matrix]
    sign = 1
    prev: Any = 1
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = coeff_exact_div(M[i][j] * pivot - M[i][k] * M[k][j], prev)
        prev = pivot
    det = M[n - 1][n - 1]
    return normalize_scalar(-det if sign < 0 else det)


def sylvester_resultant(p: UnivarPoly, q: UnivarPoly) -> Any:
    """lc(p)^deg q · lc(q)^deg p · Π (α_i − β_j) over the roots α of p and β of q."""
    if not p or not q:
        raise UsageError("resultant of a zero polynomial")
    if len(p) == 1 and len(q) == 1:
        return 1
    if has_fraction_coefficients(p, q):
        m = parameter_count(p, q)
        P, dp = clear_coefficient_denominators(p, m)
        Q, dq = clear_coefficient_denominators(q, m)
        # Res(dp·p, dq·q) = dp^deg q · dq^deg p · Res(p, q)
        scale = dp ** (len(q) - 1) * dq ** (len(p) - 1)
        return polynomial_quotient(as_polynomial(sylvester_resultant(P, Q), m), scale)
    return bareiss_determinant(sylvester_matrix(p, q))


def discriminant(p: UnivarPoly) -> Any:
    """(−1)^(N(N−1)/2) · Res(p, p′) / lc(p); zero exactly when p has a repeated root."""
    if not p or len(p) < 2:
        raise UsageError("the discriminant needs a polynomial of degree >= 1")
    N = len(p) - 1
    if N == 1:
        return 1
    if has_fraction_coefficients(p):
        m = parameter_count(p)
        P, d = clear_coefficient_denominators(p, m)
        return polynomial_quotient(as_polynomial(discriminant(P), m), d ** (2 * N - 2))
    res = sylvester_resultant(p, p.derivative())
    if (N * (N - 1) // 2) % 2:
        res = -res
    return field_div(res, p.lc)


def as_polynomial(value: Any, nvars: int) -> Polynomial:
    """Coerce a scalar resultant into the coefficient ring ℚ[x] with ``nvars`` parameters."""
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(nvars, value)
