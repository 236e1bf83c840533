"""Monomial orders as sort keys: a larger key means a larger monomial."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from hnpkit.errors import UsageError
from hnpkit.polycore.monomial import Monomial

OrderKind = Literal["lex", "grevlex", "elimination"]


def _grevlex(exps: tuple[int, ...]) -> tuple[int, ...]:
    return (sum(exps),) + tuple(-e for e in reversed(exps))


@dataclass(frozen=True)
class MonomialOrder:
    """``permutation[i]`` is the variable compared at position i.

    For ``elimination`` the ``eliminated`` block is compared first (grevlex
    within each block), so any monomial involving it beats every monomial
    that does not.
    """

    kind: OrderKind
    nvars: int
    permutation: tuple[int, ...] = ()
    eliminated: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.permutation:
            object.__setattr__(self, "permutation", tuple(range(self.nvars)))
        if sorted(self.permutation) != list(range(self.nvars)):
            raise UsageError(f"{self.permutation} is not a permutation of {self.nvars} variables")
        if self.kind == "elimination" and any(not 0 <= i < self.nvars for i in self.eliminated):
            raise UsageError("eliminated block out of range")

    @classmethod
    def lex(cls, nvars: int) -> MonomialOrder:
        return cls("lex", nvars)

    @classmethod
    def grevlex(cls, nvars: int) -> MonomialOrder:
        return cls("grevlex", nvars)

    @classmethod
    def eliminating(cls, nvars: int, block: tuple[int, ...]) -> MonomialOrder:
        return cls("elimination", nvars, eliminated=tuple(block))

    def key(self, mono: Monomial) -> tuple:
        return _order_key(self, mono)

    def retained(self) -> tuple[int, ...]:
        elim = set(self.eliminated)
        return tuple(i for i in self.permutation if i not in elim)


@lru_cache(maxsize=200_000)
def _order_key(order: MonomialOrder, mono: Monomial) -> tuple:
    perm = tuple(mono[i] for i in order.permutation)
    if order.kind == "lex":
        return perm
    if order.kind == "grevlex":
        return _grevlex(perm)
    elim = set(order.eliminated)
    first = tuple(mono[i] for i in order.permutation if i in elim)
    rest = tuple(mono[i] for i in order.permutation if i not in elim)
    return (_grevlex(first), _grevlex(rest))
