"""Index combinatorics for s-Hankel hypermatrices.

Indices are 1-based tuples ``a = (a_1, ..., a_n)`` with ``1 <= a_i <= r_i``.
Two indices are s-equivalent when they agree past position ``s`` and have the
same sum over the first ``s`` positions; each class is named by its
lexicographically largest member, the *normal form*.  Ring variables are in
bijection with normal forms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

Index = Tuple[int, ...]


class ShapeError(ValueError):
    """Invalid shape parameters or an index that does not fit a shape."""


@dataclass(frozen=True)
class Shape:
    """Ambient parameters ``(r_1..r_n, s, t)``."""

    r: Tuple[int, ...]
    s: int
    t: int

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        object.__setattr__(self, "r", r)
        n = len(r)
        if n < 1:
            raise ShapeError("need at least one component")
        if any(x < 2 for x in r):
            raise ShapeError(f"every r_i must be >= 2, got {r}")
        if not 1 <= self.s <= n:
            raise ShapeError(f"s={self.s} outside [1, {n}]")
        if not 1 <= self.t <= n:
            raise ShapeError(f"t={self.t} outside [1, {n}]")

    @property
    def n(self) -> int:
        return len(self.r)

    def with_t(self, t: int) -> "Shape":
        return Shape(self.r, self.s, t)

    def indices(self) -> Iterable[Index]:
        """All of the index set in lexicographic order."""
        return itertools.product(*(range(1, x + 1) for x in self.r))

    def to_json(self) -> dict:
        return {"r": list(self.r), "s": self.s, "t": self.t}

    def __str__(self) -> str:
        return f"r={self.r} s={self.s} t={self.t}"


def check_index(a: Sequence[int], sh: Shape) -> Index:
    a = tuple(a)
    if len(a) != sh.n:
        raise ShapeError(f"index {a} has length {len(a)}, shape has n={sh.n}")
    for ai, ri in zip(a, sh.r):
        if not 1 <= ai <= ri:
            raise ShapeError(f"index {a} out of bounds for r={sh.r}")
    return a


def norm_s(a: Sequence[int], s: int) -> int:
    """Sum of absolute values of the first ``s`` entries."""
    if not 0 <= s <= len(a):
        raise ValueError(f"s={s} out of range for a vector of length {len(a)}")
    return sum(abs(x) for x in a[:s])


def tail(a: Sequence[int], k: int) -> Index:
    """Components ``k+1..n`` (1-based) as a tuple."""
    return tuple(a[k:])


def s_equivalent(a: Sequence[int], b: Sequence[int], sh: Shape) -> bool:
    a = check_index(a, sh)
    b = check_index(b, sh)
    s = sh.s
    return a[s:] == b[s:] and sum(a[:s]) == sum(b[:s])


def _greedy_head(total: int, r: Sequence[int]) -> list:
    # Fill left to right with the largest value that keeps the remainder feasible.
    head = []
    k = len(r)
    for i, ri in enumerate(r):
        v = min(ri, total - (k - i - 1))
        head.append(v)
        total -= v
    return head


def normal_form(a: Sequence[int], sh: Shape) -> Index:
    """Lexicographically maximal index s-equivalent to ``a``."""
    a = check_index(a, sh)
    s = sh.s
    return tuple(_greedy_head(sum(a[:s]), sh.r[:s])) + a[s:]


def switch(L: Iterable[int], a: Sequence[int], b: Sequence[int]) -> Index:
    """Index taking ``b_i`` for ``i`` in ``L`` and ``a_i`` elsewhere (1-based ``L``)."""
    if len(a) != len(b):
        raise ShapeError("switch of indices with different lengths")
    L = set(L)
    for i in L:
        if not 1 <= i <= len(a):
            raise ShapeError(f"component {i} outside [1, {len(a)}]")
    return tuple(b[i] if (i + 1) in L else a[i] for i in range(len(a)))


def hamming(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ShapeError("distance between indices of different lengths")
    return sum(1 for x, y in zip(a, b) if x != y)


def differing_components(a: Sequence[int], b: Sequence[int]) -> list:
    """1-based components where ``a`` and ``b`` differ, increasing."""
    return [i + 1 for i, (x, y) in enumerate(zip(a, b)) if x != y]


def ring_dimension(sh: Shape) -> int:
    """Number of ring variables: ``(sum_{i<=s} r_i - s + 1) * r_{s+1} ... r_n``."""
    dim = sum(sh.r[: sh.s]) - sh.s + 1
    for x in sh.r[sh.s:]:
        dim *= x
    return dim


@lru_cache(maxsize=None)
def enumerate_variables(sh: Shape) -> Tuple[Index, ...]:
    """All normal forms, largest first."""
    s = sh.s
    heads = [
        tuple(_greedy_head(total, sh.r[:s]))
        for total in range(s, sum(sh.r[:s]) + 1)
    ]
    tails = list(itertools.product(*(range(1, x + 1) for x in sh.r[s:])))
    forms = [h + tl for h in heads for tl in tails]
    return tuple(sorted(forms, reverse=True))


def equivalence_class(a: Sequence[int], sh: Shape) -> Tuple[Index, ...]:
    """All members of the s-equivalence class of ``a``, lexicographically sorted."""
    a = check_index(a, sh)
    return _class_members(sh, normal_form(a, sh))


@lru_cache(maxsize=None)
def _class_members(sh: Shape, nf: Index) -> Tuple[Index, ...]:
    s = sh.s
    total = sum(nf[:s])
    heads = [
        h for h in itertools.product(*(range(1, x + 1) for x in sh.r[:s]))
        if sum(h) == total
    ]
    return tuple(sorted(h + nf[s:] for h in heads))
