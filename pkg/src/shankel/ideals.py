"""Generators of the minor ideals and their structured Groebner bases.

For ``L`` a set of components and indices ``a, b`` the (generalized) minor is
``f_{L,a,b} = x_a x_b - x_{sw(L,a,b)} x_{sw(L,b,a)}`` read in the ring of the
shape.  Generators are stored monic (leading coefficient +1), deduplicated
and sorted by decreasing leading monomial; provenance records one
``(L, a, b)`` producing each of them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import GroebnerBasis, Ideal, buchberger
from .indices import (
    Index,
    Shape,
    check_index,
    differing_components,
    hamming,
    s_equivalent,
    switch,
)
from .polyring import Monomial, Polynomial, ring_of
from .switchable import PreconditionError, SwitchableSet


def minor(sh: Shape, L, a: Sequence[int], b: Sequence[int]) -> Polynomial:
    """``x_a x_b - x_{sw(L,a,b)} x_{sw(L,b,a)}`` with that exact sign."""
    if isinstance(L, int):
        L = {L}
    a, b = check_index(a, sh), check_index(b, sh)
    R = ring_of(sh)
    return R.binomial(R.index_monomial([a, b]),
                      R.index_monomial([switch(L, a, b), switch(L, b, a)]))


def generalized_minor(sh: Shape, i: int, a: Sequence[int], b: Sequence[int]) -> Polynomial:
    return minor(sh, {i}, a, b)


def _collect(sh: Shape, triples, label: str) -> Ideal:
    seen: Dict[Polynomial, tuple] = {}
    for L, a, b in triples:
        f = minor(sh, L, a, b)
        if f.is_zero():
            continue
        f = f.monic()
        if f not in seen:
            seen[f] = (tuple(sorted(L)), a, b)
    gens = sorted(seen, key=Polynomial.sort_key, reverse=True)
    return Ideal(ring_of(sh), gens, label, provenance=[seen[g] for g in gens])


def gens_I(sh: Shape) -> Ideal:
    """Slice minors: distance-2 pairs, one switched component in ``[t]``."""
    def triples():
        for a, b in itertools.combinations(sh.indices(), 2):
            if hamming(a, b) == 2:
                for i in differing_components(a, b):
                    if i <= sh.t:
                        yield {i}, a, b
    return _collect(sh, triples(), "I")


def gens_Itilde(sh: Shape) -> Ideal:
    """All generalized minors with a switched component in ``[t]``."""
    def triples():
        for a, b in itertools.combinations(sh.indices(), 2):
            for i in differing_components(a, b):
                if i <= sh.t:
                    yield {i}, a, b
    return _collect(sh, triples(), "Itilde")


def gens_Itilde_S(S: SwitchableSet) -> Ideal:
    """Generalized minors ``f_{i,a,b}`` with ``a, b`` connected in ``S``."""
    sh = S.shape

    def triples():
        for C in S.classes:
            for a, b in itertools.combinations(sorted(C.members), 2):
                for i in differing_components(a, b):
                    if i <= sh.t:
                        yield {i}, a, b
    return _collect(sh, triples(), "Itilde_S")


def var_ideal(S: SwitchableSet) -> Ideal:
    """Variables whose class lies outside ``S``."""
    R = ring_of(S.shape)
    inside = set(S.variables)
    gens = [R.gen(v) for v in R.variables if v not in inside]
    return Ideal(R, gens, "Var_S")


def gens_P_S(S: SwitchableSet) -> Ideal:
    I = gens_Itilde_S(S)
    V = var_ideal(S)
    return Ideal(I.ring, V.generators + I.generators, "P_S")


def structured_basis(S: SwitchableSet) -> List[Polynomial]:
    """The binomials ``f_{K,a,b}`` for ``K`` in ``[t]`` and ``a, b`` connected in ``S``.

    Zero binomials are dropped; the rest are monic, deduplicated and sorted.
    Components outside ``diff(a, b)`` do not change ``f_{K,a,b}``, so only
    subsets of the differing components are visited.
    """
    sh = S.shape
    out = set()
    for C in S.classes:
        for a, b in itertools.combinations(sorted(C.members), 2):
            D = [i for i in differing_components(a, b) if i <= sh.t]
            for k in range(1, len(D) + 1):
                for K in itertools.combinations(D, k):
                    f = minor(sh, set(K), a, b)
                    if not f.is_zero():
                        out.add(f.monic())
    return sorted(out, key=Polynomial.sort_key, reverse=True)


_PS_CACHE: Dict[SwitchableSet, GroebnerBasis] = {}


def P_S_groebner(S: SwitchableSet, budget: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``P_S``, cached per set."""
    if S not in _PS_CACHE:
        _PS_CACHE[S] = buchberger(gens_P_S(S), budget=budget)
    return _PS_CACHE[S]


# flattenings ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Flattening:
    """Matrix of variables: rows indexed by component ``i``, columns by the rest (lex)."""

    shape: Shape
    component: int
    entries: Tuple[Tuple[Index, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def minors_ideal(self) -> Ideal:
        R = ring_of(self.shape)
        seen = set()
        for (p, q) in itertools.combinations(range(self.rows), 2):
            for (u, v) in itertools.combinations(range(self.cols), 2):
                f = R.binomial(R.index_monomial([self.entries[p][u], self.entries[q][v]]),
                               R.index_monomial([self.entries[p][v], self.entries[q][u]]))
                if not f.is_zero():
                    seen.add(f.monic())
        gens = sorted(seen, key=Polynomial.sort_key, reverse=True)
        return Ideal(R, gens, f"minors of flattening {self.component}")


def flattening(sh: Shape, i: int) -> Flattening:
    if not 1 <= i <= sh.n:
        raise ValueError(f"component {i} outside [1, {sh.n}]")
    others = [range(1, x + 1) for k, x in enumerate(sh.r) if k != i - 1]
    cols = list(itertools.product(*others))
    R = ring_of(sh)
    rows = []
    for v in range(1, sh.r[i - 1] + 1):
        rows.append(tuple(R.key_of(c[: i - 1] + (v,) + c[i - 1:]) for c in cols))
    return Flattening(sh, i, tuple(rows))


# monomial multipliers ----------------------------------------------------------------

def normalize_minor(sh: Shape, i: int, a: Sequence[int], b: Sequence[int]):
    """Indices ``(a', b', sign)`` with ``f_{i,a,b} = sign * f_{i,a',b'}``.

    The new pair satisfies ``a'_j >= b'_j`` for every ``j <= s``; for a nonzero
    minor the leading term of ``f_{i,a',b'}`` is ``x_{a'} x_{b'}``.
    """
    a, b = check_index(a, sh), check_index(b, sh)
    R = ring_of(sh)
    f = generalized_minor(sh, i, a, b)
    norm = lambda x: sum(x[: sh.s])
    if f.is_zero():
        return a, a, 1
    sign = 1
    if f.lm != R.index_monomial([a, b]):
        a, b = switch({i}, a, b), switch({i}, b, a)
        sign = -1
    if norm(a) < norm(b):
        a, b = b, a
    J = [j for j in range(sh.s) if j != i - 1]
    A = norm(a) - (a[i - 1] if i <= sh.s else 0)
    B = norm(b) - (b[i - 1] if i <= sh.s else 0)
    if A < B:
        raise AssertionError("leading index does not carry the larger s-norm")
    a2, b2 = list(a), list(b)
    spare = A - B
    for j in J:
        step = min(spare, sh.r[j] - b2[j])
        a2[j] = b2[j] + step
        spare -= step
    if spare:
        raise AssertionError("no room to place the s-norm difference")
    a2, b2 = tuple(a2), tuple(b2)
    if generalized_minor(sh, i, a, b) != generalized_minor(sh, i, a2, b2):
        raise AssertionError("normalization changed the minor")
    return a2, b2, sign


def _multiplier_path(sh: Shape, i: int, a: Index, b: Index) -> List[Index]:
    K = [k for k in differing_components(a, b) if k != i]
    return [switch(set(K[:j]), a, b) for j in range(1, len(K))]


def _pairwise_inequivalent(path, sh) -> bool:
    return all(not s_equivalent(x, y, sh) for x, y in itertools.combinations(path, 2))


def multiplier_path(sh: Shape, i: int, a: Sequence[int], b: Sequence[int]) -> List[Index]:
    """Intermediate indices ``c_1..c_l`` whose product times ``f_{i,a,b}`` lies in ``I``."""
    a, b = check_index(a, sh), check_index(b, sh)
    if not 1 <= i <= sh.t:
        raise PreconditionError(f"component {i} outside [1, {sh.t}]")
    if a[i - 1] == b[i - 1]:
        raise PreconditionError("a and b must differ in the switched component")
    if hamming(a, b) < 2:
        raise PreconditionError("a and b must be at distance at least 2")
    path = _multiplier_path(sh, i, a, b)
    if _pairwise_inequivalent(path, sh):
        return path
    a2, b2, _ = normalize_minor(sh, i, a, b)
    return _multiplier_path(sh, i, a2, b2)


def monomial_multiplier(sh: Shape, i: int, a: Sequence[int], b: Sequence[int]) -> Monomial:
    """Squarefree ``m`` with ``m * f_{i,a,b}`` in the slice-minor ideal."""
    return ring_of(sh).index_monomial(multiplier_path(sh, i, a, b))


minor_multi = minor


# cached per shape: the step budget only constrains the first computation
@lru_cache(maxsize=None)
def groebner_I(sh: Shape) -> GroebnerBasis:
    return gens_I(sh).groebner()


@lru_cache(maxsize=None)
def groebner_Itilde(sh: Shape) -> GroebnerBasis:
    return gens_Itilde(sh).groebner()
