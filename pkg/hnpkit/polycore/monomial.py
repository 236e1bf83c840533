"""Exponent-vector helpers. A monomial is a tuple of non-negative ints, parameters first."""

from collections.abc import Iterator
from itertools import combinations_with_replacement

Monomial = tuple[int, ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(i + j for i, j in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(i - j for i, j in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(i <= j for i, j in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(i, j) for i, j in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(i == 0 or j == 0 for i, j in zip(a, b))


def monomials_up_to(nvars: int, degree: int) -> Iterator[Monomial]:
    """All monomials in nvars variables of total degree <= degree, lowest degree first."""
    if degree < 0:
        return
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            yield tuple(exps)
        if nvars == 0:
            return
