"""Rewrite a system so that every polynomial has combined degree <= 2 and coefficients in {-1, 0, 1}.

Fresh y-variables stand for subexpressions: powers y^(2^j) by iterated
squaring, products of more than two factors pairwise, and integer
multiples 2^j·B by doubling chains. Each fresh variable w comes with one
defining polynomial ``w - R`` where R only mentions older variables.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

from hnpkit.errors import UsageError
from hnpkit.polycore.monomial import Monomial
from hnpkit.polycore.polynomial import Polynomial
from hnpkit.polycore.system import PolynomialSystem, raw_size
from hnpkit.utils.tracing import span

logger = logging.getLogger(__name__)

VariableKind = Literal["power", "product", "copy", "double", "one"]


@dataclass(frozen=True)
class IntroducedVariable:
    index: int
    name: str
    definition: int
    kind: VariableKind


@dataclass(frozen=True)
class NormalizationMap:
    """``index`` is a joint-space index; ``definition`` indexes the normalized polys."""

    introduced: tuple[IntroducedVariable, ...]
    original: tuple[int, int, int]
    normalized: tuple[int, int, int]
    original_raw_size: int
    normalized_size: int

    @property
    def is_empty(self) -> bool:
        return not self.introduced

    def as_dict(self) -> dict[str, Any]:
        return {
            "introduced": [
                {"index": v.index, "name": v.name, "definition": v.definition, "kind": v.kind}
                for v in self.introduced
            ],
            "original": {"m": self.original[0], "n": self.original[1], "k": self.original[2]},
            "normalized": {"m": self.normalized[0], "n": self.normalized[1], "k": self.normalized[2]},
            "sizes": {"original_raw": self.original_raw_size, "normalized": self.normalized_size},
        }


def is_normalized(S: PolynomialSystem) -> bool:
    return all(
        f.denominator is None
        and f.poly.degree() <= 2
        and all(c in (1, -1) for c in f.poly.coefficients())
        for f in S.polys
    )


@dataclass
class _Builder:
    """Grows the list of fresh variables; terms are dicts over an open-ended index space."""

    m: int
    n: int
    taken: set[str]
    definitions: list[dict[Monomial, int]] = field(default_factory=list)
    introduced: list[tuple[int, str, VariableKind]] = field(default_factory=list)
    powers: dict[tuple[int, int], int] = field(default_factory=dict)
    products: dict[tuple[int, int], int] = field(default_factory=dict)
    chains: dict[int, list[int]] = field(default_factory=dict)
    one: int | None = None

    # Monomials are sparse here: a sorted tuple of variable indices with repetition.

    def _fresh(self, kind: VariableKind, rest: dict[tuple[int, ...], int]) -> int:
        index = self.m + self.n + len(self.introduced)
        counter = len(self.introduced) + 1
        name = f"t_{counter}"
        while name in self.taken:
            counter += 1
            name = f"t_{counter}_{len(self.taken)}"
        self.taken.add(name)
        self.introduced.append((index, name, kind))
        definition = {(index,): 1}
        for mono, c in rest.items():
            definition[mono] = definition.get(mono, 0) - c
        self.definitions.append(definition)
        return index

    def power(self, v: int, j: int) -> int:
        """Variable standing for v^(2^j)."""
        if j == 0:
            return v
        if (v, j) not in self.powers:
            prev = self.power(v, j - 1)
            self.powers[(v, j)] = self._fresh("power", {(prev, prev): 1})
        return self.powers[(v, j)]

    def product(self, a: int, b: int) -> int:
        a, b = min(a, b), max(a, b)
        if a == b and a < self.m + self.n:
            return self.power(a, 1)
        if (a, b) not in self.products:
            self.products[(a, b)] = self._fresh("product", {(a, b): 1})
        return self.products[(a, b)]

    def unit(self) -> int:
        if self.one is None:
            self.one = self._fresh("one", {(): 1})
        return self.one

    def base(self, small: tuple[int, ...]) -> int:
        """A single variable equal to the degree <= 2 monomial ``small``."""
        if len(small) == 1:
            return small[0]
        if not small:
            return self.unit()
        return self.product(small[0], small[1])

    def doubled(self, b: int, j: int) -> int:
        """Variable equal to 2^j · b, built as d_j = d_(j-1) + copy(d_(j-1))."""
        chain = self.chains.setdefault(b, [b])
        while len(chain) <= j:
            prev = chain[-1]
            copy = self._fresh("copy", {(prev,): 1})
            chain.append(self._fresh("double", {(prev,): 1, (copy,): 1}))
        return chain[j]

    def small_monomial(self, exps: Monomial) -> tuple[int, ...]:
        """Rewrite x^e as a product of at most two (possibly fresh) variables."""
        if sum(exps) <= 2:
            return tuple(sorted(i for i, e in enumerate(exps) for _ in range(e)))
        factors = sorted(
            self.power(i, j)
            for i, e in enumerate(exps)
            for j in range(e.bit_length())
            if e >> j & 1
        )
        while len(factors) > 2:
            merged = self.product(factors[0], factors[1])
            factors = sorted([merged] + factors[2:])
        return tuple(factors)

    def term(self, exps: Monomial, c: int) -> dict[tuple[int, ...], int]:
        small = self.small_monomial(exps)
        if c in (1, -1):
            return {small: c}
        b = self.base(small)
        sign = 1 if c > 0 else -1
        magnitude = abs(c)
        out: dict[tuple[int, ...], int] = {}
        for j in range(magnitude.bit_length()):
            if magnitude >> j & 1:
                out[(self.doubled(b, j),)] = sign
        return out


def _dense(terms: dict[tuple[int, ...], int], nvars: int) -> Polynomial:
    out: dict[Monomial, int] = {}
    for sparse, c in terms.items():
        exps = [0] * nvars
        for i in sparse:
            exps[i] += 1
        key = tuple(exps)
        out[key] = out.get(key, 0) + c
    return Polynomial(nvars, out)


def normalize_system(S: PolynomialSystem) -> tuple[PolynomialSystem, NormalizationMap]:
    """Equisatisfiable system of degree <= 2 with ±1 coefficients, plus the variable map.

    The transformed originals come first (same order), followed by one
    defining polynomial per fresh variable. The parameter count is unchanged.
    """
    S = S.cleared()
    original = (S.m, S.n, S.k)
    original_raw = raw_size(S)
    if is_normalized(S):
        return S, NormalizationMap((), original, original, original_raw, S.s)

    with span("normalize.normalize_system", logger, m=S.m, n=S.n, k=S.k) as attrs:
        builder = _Builder(S.m, S.n, taken=set(S.names))
        rewritten: list[dict[tuple[int, ...], int]] = []
        for f in S.polys:
            if f.poly.degree() <= 2 and all(c in (1, -1) for c in f.poly.coefficients()):
                rewritten.append(
                    {tuple(i for i, e in enumerate(mono) for _ in range(e)): c for mono, c in f.poly.terms.items()}
                )
                continue
            acc: dict[tuple[int, ...], int] = {}
            for mono, c in f.poly.sorted_terms():
                for key, v in builder.term(mono, c).items():
                    acc[key] = acc.get(key, 0) + v
            rewritten.append(acc)

        n_new = S.n + len(builder.introduced)
        nvars = S.m + n_new
        polys = [_dense(t, nvars) for t in rewritten] + [_dense(d, nvars) for d in builder.definitions]
        var_names = S.var_names + tuple(name for _, name, _ in builder.introduced)
        out = PolynomialSystem.from_polynomials(polys, S.m, n_new, S.param_names, var_names)
        introduced = tuple(
            IntroducedVariable(index, name, S.k + pos, kind)
            for pos, (index, name, kind) in enumerate(builder.introduced)
        )
        nmap = NormalizationMap(introduced, original, (out.m, out.n, out.k), original_raw, out.s)
        attrs.update(introduced=len(introduced), k_out=out.k)
    logger.info(f"normalized system: {original} -> {(out.m, out.n, out.k)}, {len(introduced)} fresh variables")
    return out, nmap


def size_measure(S: PolynomialSystem) -> int:
    """max(m, n, k) of a normalized system."""
    return S.s


def expand_definitions(S_norm: PolynomialSystem, nmap: NormalizationMap) -> list[Polynomial]:
    """Substitute every fresh variable by its value in the original variables.

    The first ``k`` results equal the original polynomials; the defining
    polynomials expand to zero.
    """
    m, n, _ = nmap.original
    target = m + n
    images: list[Polynomial] = [Polynomial.variable(target, i) for i in range(target)]
    images += [Polynomial.zero(target) for _ in nmap.introduced]
    for var in nmap.introduced:
        definition = S_norm.polys[var.definition].poly
        rest = Polynomial.variable(definition.nvars, var.index) - definition
        images[var.index] = rest.compose(images, target)
    return [f.poly.compose(images, target) for f in S_norm.polys]


def denormalize_solution(nmap: NormalizationMap, values: Sequence[Any]) -> list[Any]:
    """Project a solution (y-values) of the normalized system onto the original variables."""
    _, n, _ = nmap.original
    _, n_norm, _ = nmap.normalized
    if len(values) != n_norm:
        raise UsageError(f"expected {n_norm} values, got {len(values)}")
    return list(values[:n])


def bit_size(S: PolynomialSystem) -> int:
    """Total binary size of the sparse encoding: one unit per term plus coefficient and exponent bits."""
    total = 0
    for f in S.polys:
        for mono, c in f.poly.terms.items():
            total += 1 + abs(int(c)).bit_length() + sum(e.bit_length() for e in mono)
    return total

