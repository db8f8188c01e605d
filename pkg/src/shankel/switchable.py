"""(s,t)-switchable subsets of the index set.

A subset ``S`` is switchable when it is a union of s-equivalence classes and
contains ``sw(i, a, b)`` for every ``a, b`` in ``S`` at distance 2 and every
``i <= t``.  Because of the first rule every switchable set is determined by
the classes (ring variables) it contains, so enumeration works on bitmasks
over :func:`enumerate_variables`.
"""
from __future__ import annotations

import itertools
import os
from collections import deque
from functools import cached_property, lru_cache
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .indices import (
    Index,
    Shape,
    check_index,
    enumerate_variables,
    equivalence_class,
    hamming,
    normal_form,
    s_equivalent,
    switch,
)

DEFAULT_ENUM_BOUND = int(os.environ.get("SHANKEL_ENUM_BOUND", "24"))


class NotSwitchable(ValueError):
    pass


class PreconditionError(ValueError):
    """Inputs violate the hypotheses of a construction."""


class EnumerationBoundExceeded(RuntimeError):
    pass


def is_switchable(members: Iterable[Sequence[int]], sh: Shape) -> bool:
    """Check both closure rules directly on a set of indices."""
    S = {check_index(a, sh) for a in members}
    for a in S:
        for b in equivalence_class(a, sh):
            if b not in S:
                return False
    t = sh.t
    for a, b in itertools.combinations(S, 2):
        if hamming(a, b) != 2:
            continue
        for i in range(1, t + 1):
            if a[i - 1] != b[i - 1] and (switch({i}, a, b) not in S
                                         or switch({i}, b, a) not in S):
                return False
    return True


@lru_cache(maxsize=None)
def _class_data(sh: Shape):
    """Variables, their members, and for each pair of classes the classes a switch forces."""
    variables = enumerate_variables(sh)
    pos = {v: k for k, v in enumerate(variables)}
    members = [equivalence_class(v, sh) for v in variables]
    owner = {}
    for k, cls in enumerate(members):
        for a in cls:
            owner[a] = k
    m = len(variables)
    forced = [[0] * m for _ in range(m)]
    indices = list(owner)
    t = sh.t
    for x, a in enumerate(indices):
        for b in indices[x + 1:]:
            if hamming(a, b) != 2:
                continue
            bits = 0
            for i in range(1, t + 1):
                if a[i - 1] != b[i - 1]:
                    bits |= 1 << owner[switch({i}, a, b)]
                    bits |= 1 << owner[switch({i}, b, a)]
            if bits:
                ka, kb = owner[a], owner[b]
                forced[ka][kb] |= bits
                forced[kb][ka] |= bits
    return variables, pos, members, owner, forced


def closure_mask(mask: int, sh: Shape) -> int:
    """Smallest switchable set (as a class bitmask) containing ``mask``."""
    _, _, _, _, forced = _class_data(sh)
    inside = [k for k in range(len(forced)) if mask >> k & 1]
    queue = list(inside)
    while queue:
        k = queue.pop()
        row = forced[k]
        for j in inside:
            extra = row[j] & ~mask
            if extra:
                mask |= extra
                for q in _bits(extra):
                    inside.append(q)
                    queue.append(q)
    return mask


def _bits(mask: int) -> Iterator[int]:
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


class SwitchableSet:
    """A switchable subset of the index set, stored as a set of class bits."""

    def __init__(self, sh: Shape, mask: int):
        self.shape = sh
        self.mask = mask

    @classmethod
    def from_members(cls, sh: Shape, members: Iterable[Sequence[int]], check: bool = True):
        members = {check_index(a, sh) for a in members}
        if check and not is_switchable(members, sh):
            raise NotSwitchable(f"{sorted(members)} is not ({sh.s},{sh.t})-switchable")
        _, pos, _, _, _ = _class_data(sh)
        mask = 0
        for a in members:
            mask |= 1 << pos[normal_form(a, sh)]
        return cls(sh, mask)

    @classmethod
    def full(cls, sh: Shape) -> "SwitchableSet":
        return cls(sh, (1 << len(enumerate_variables(sh))) - 1)

    @classmethod
    def empty(cls, sh: Shape) -> "SwitchableSet":
        return cls(sh, 0)

    # set protocol

    @cached_property
    def variables(self) -> Tuple[Index, ...]:
        """Normal forms of the classes in the set, largest first."""
        variables = enumerate_variables(self.shape)
        return tuple(v for k, v in enumerate(variables) if self.mask >> k & 1)

    @cached_property
    def members(self) -> FrozenSet[Index]:
        _, _, members, _, _ = _class_data(self.shape)
        return frozenset(a for k in _bits(self.mask) for a in members[k])

    def __contains__(self, a) -> bool:
        return tuple(a) in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, SwitchableSet) and self.shape == other.shape and self.mask == other.mask

    def __hash__(self):
        return hash((self.shape, self.mask))

    def __le__(self, other: "SwitchableSet") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "SwitchableSet") -> bool:
        return self <= other and self.mask != other.mask

    def __repr__(self):
        return f"SwitchableSet({sorted(self.members)})"

    def sort_key(self):
        return (len(self.members), sorted(self.members))

    # structure

    @cached_property
    def classes(self) -> Tuple["SwitchableSet", ...]:
        """Connectedness classes (distance-1 paths inside the set)."""
        seen: set = set()
        out = []
        for a in sorted(self.members):
            if a in seen:
                continue
            comp = _bfs_component(a, self.members)
            seen |= comp
            out.append(SwitchableSet.from_members(self.shape, comp, check=False))
        return tuple(out)

    def connected(self, a, b) -> bool:
        a, b = tuple(a), tuple(b)
        if a not in self.members or b not in self.members:
            return False
        return any(a in c.members and b in c.members for c in self.classes)

    def to_json(self) -> dict:
        return {
            "members": [list(a) for a in sorted(self.members)],
            "variables": [list(v) for v in self.variables],
            "classes": [[list(a) for a in sorted(c.members)] for c in self.classes],
        }


def _neighbours(a: Index, members) -> Iterator[Index]:
    # distance-1 neighbours of a inside members, deterministic order
    for b in sorted(members):
        if hamming(a, b) == 1:
            yield b


def _bfs_component(a: Index, members) -> set:
    comp = {a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in _neighbours(x, members):
            if y not in comp:
                comp.add(y)
                queue.append(y)
    return comp


def connected_components(S: SwitchableSet) -> Tuple[SwitchableSet, ...]:
    return S.classes


def shortest_path(a: Sequence[int], b: Sequence[int], members) -> Optional[List[Index]]:
    """Shortest distance-1 path from ``a`` to ``b`` inside ``members`` (BFS)."""
    a, b = tuple(a), tuple(b)
    members = set(members)
    if a not in members or b not in members:
        return None
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for y in _neighbours(x, members):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def path_s_equivalence(a: Sequence[int], b: Sequence[int], S: SwitchableSet) -> List[Index]:
    """Explicit path between s-equivalent members of ``S``.

    Built by induction on the s-distance ``sum_{i<=s} |a_i - b_i|``: a
    difference of 2 is bridged through component 1 (moving the difference there
    by s-equivalence first when needed), a larger one is shrunk by stepping to
    an s-equivalent index one unit closer to ``b``.
    """
    sh = S.shape
    a, b = check_index(a, sh), check_index(b, sh)
    if a not in S or b not in S:
        raise PreconditionError("both indices must lie in the set")
    if not s_equivalent(a, b, sh):
        raise PreconditionError(f"{a} and {b} are not {sh.s}-equivalent")
    path = [a]
    while a != b:
        delta = sum(abs(x - y) for x, y in zip(a[: sh.s], b[: sh.s]))
        if delta == 2:
            path.extend(_bridge(a, b, sh)[1:])
            break
        h = next(i for i in range(sh.s) if a[i] > b[i])
        k = next(i for i in range(sh.s) if a[i] < b[i])
        a2 = list(a)
        a2[h] -= 1
        a2[k] += 1
        a2 = tuple(a2)
        path.extend(_bridge(a, a2, sh)[1:])
        a = a2
    for x in path:
        if x not in S:
            raise AssertionError(f"path left the set at {x}")
    return path


def _bridge(a: Index, b: Index, sh: Shape) -> List[Index]:
    # a, b s-equivalent, differing by +-1 in two positions of [s]
    if a[0] != b[0]:
        return [a, switch({1}, a, b), b]
    k = next(i for i in range(sh.s) if a[i] > b[i])
    h = next(i for i in range(sh.s) if a[i] < b[i])
    a2 = list(a)
    if a[0] == 1:
        a2[0] = 2
        a2[k] -= 1
    else:
        a2[0] -= 1
        a2[h] += 1
    c = switch({1}, tuple(a2), a)
    return [a, c, b]


def path_avoiding_component(a: Sequence[int], b: Sequence[int], i: int,
                            S: SwitchableSet) -> List[Index]:
    """Indices ``a = c_0, ..., c_l`` in ``S`` feeding the monomial multiplier.

    Consecutive entries differ in exactly one component other than ``i``,
    ``d(c_l, b) = 2`` and ``c_l`` differs from ``b`` in component ``i``.
    """
    sh = S.shape
    a, b = check_index(a, sh), check_index(b, sh)
    if not 1 <= i <= sh.t:
        raise PreconditionError(f"component {i} outside [1, {sh.t}]")
    if a[i - 1] == b[i - 1]:
        raise PreconditionError("a and b must differ in the chosen component")
    if hamming(a, b) < 2:
        raise PreconditionError("a and b must be at distance at least 2")
    if not S.connected(a, b):
        raise PreconditionError("a and b are not connected in the set")
    e = shortest_path(a, b, S.members)
    # e ends ..., e_l, e_{l+1}, b with d(e_l, b) = 2
    l = len(e) - 3
    c = [a]
    for j in range(1, l + 1):
        cj = switch({i}, e[j], a)
        if cj != c[-1]:
            c.append(cj)
    if hamming(c[-1], b) == 3:
        c.append(switch({i}, e[l + 1], a))
    return c


def check_avoiding_path(path: Sequence[Index], b: Index, i: int, S: SwitchableSet) -> bool:
    ok = all(x in S for x in path)
    for x, y in zip(path, path[1:]):
        ok &= hamming(x, y) == 1 and x[i - 1] == y[i - 1]
    return ok and hamming(path[-1], b) == 2 and path[-1][i - 1] != b[i - 1]


# enumeration -------------------------------------------------------------------------

def _check_bound(sh: Shape, bound: Optional[int]):
    bound = DEFAULT_ENUM_BOUND if bound is None else bound
    m = len(enumerate_variables(sh))
    if m > bound:
        raise EnumerationBoundExceeded(
            f"{m} equivalence classes exceed the enumeration bound {bound}")


def enumerate_switchable(sh: Shape, bound: Optional[int] = None) -> List[SwitchableSet]:
    """All switchable sets, by NextClosure over class bitmasks."""
    _check_bound(sh, bound)
    m = len(enumerate_variables(sh))
    full = (1 << m) - 1
    found = []
    # bit m-1-k carries element k so that NextClosure's lectic order is plain
    A = closure_mask(0, sh)
    found.append(A)
    while A != full:
        for k in range(m - 1, -1, -1):
            bit = 1 << k
            if A & bit:
                A &= ~bit
                continue
            B = closure_mask(A | bit, sh)
            low = bit - 1
            if (B & ~A) & low == 0:
                A = B
                found.append(A)
                break
        else:
            break
    sets = [SwitchableSet(sh, mask) for mask in found]
    return sorted(sets, key=SwitchableSet.sort_key)


def enumerate_switchable_brute(sh: Shape, bound: Optional[int] = None) -> List[SwitchableSet]:
    """All switchable sets by testing every union of classes with ``is_switchable``."""
    _check_bound(sh, bound)
    _, _, members, _, _ = _class_data(sh)
    out = []
    for mask in range(1 << len(members)):
        idx = [a for k in _bits(mask) for a in members[k]]
        if is_switchable(idx, sh):
            out.append(SwitchableSet(sh, mask))
    return sorted(out, key=SwitchableSet.sort_key)


def _extreme_heads(sh: Shape, k: int):
    return tuple([1] * k), tuple(sh.r[:k])


def catalog_switchable(sh: Shape) -> Optional[List[SwitchableSet]]:
    """Closed-form list of all switchable sets for ``s = n >= 3`` and ``s = n-1 >= 2``."""
    n, s = sh.n, sh.s
    if s == n and n >= 3:
        lo, hi = _extreme_heads(sh, n)
        cands = [[], [lo], [hi], [lo, hi], list(sh.indices())]
    elif s == n - 1 and n >= 3:
        lo, hi = _extreme_heads(sh, s)
        rn = sh.r[-1]
        cands = []
        for size in range(rn + 1):
            for B in itertools.combinations(range(1, rn + 1), size):
                cands.append([a for a in sh.indices() if a[-1] in B])
        extremes = [h + (l,) for l in range(1, rn + 1) for h in (lo, hi)]
        if n >= 4:
            for size in range(len(extremes) + 1):
                for sub in itertools.combinations(extremes, size):
                    cands.append(list(sub))
        else:
            # at most one extreme index per value of the last component
            for choice in itertools.product((None, lo, hi), repeat=rn):
                cands.append([h + (l + 1,) for l, h in enumerate(choice) if h is not None])
    else:
        return None
    out = {SwitchableSet.from_members(sh, c, check=False) for c in cands}
    return sorted(out, key=SwitchableSet.sort_key)


def catalog_maximal(sh: Shape) -> Optional[List[SwitchableSet]]:
    """Closed-form maximal switchable sets wherever :func:`catalog_switchable` applies."""
    n, s = sh.n, sh.s
    full = SwitchableSet.full(sh)
    if s == n and n >= 3:
        lo, hi = _extreme_heads(sh, n)
        return [full, SwitchableSet.from_members(sh, [lo, hi], check=False)]
    if s == n - 1 and n >= 4:
        lo, hi = _extreme_heads(sh, s)
        ext = [h + (l,) for l in range(1, sh.r[-1] + 1) for h in (lo, hi)]
        return [full, SwitchableSet.from_members(sh, ext, check=False)]
    if s == 2 and n == 3:
        lo, hi = _extreme_heads(sh, 2)
        out = [full]
        for phi in itertools.product((lo, hi), repeat=sh.r[2]):
            if len(set(phi)) > 1:
                out.append(SwitchableSet.from_members(
                    sh, [h + (l + 1,) for l, h in enumerate(phi)], check=False))
        return out
    return None


def maximal_switchable(sh: Shape, sets: Optional[List[SwitchableSet]] = None,
                       bound: Optional[int] = None, budget: Optional[int] = None) -> List[SwitchableSet]:
    """Sets whose prime is incomparable with that of every larger switchable set."""
    from .ideals import P_S_groebner, gens_P_S, structured_basis

    if sets is None:
        sets = enumerate_switchable(sh, bound)
    sparse = {S: not structured_basis(S) for S in sets}

    def comparable(S, T):
        if sparse[S] and sparse[T]:
            return True  # both are variable ideals and Var_T is inside Var_S
        GS = P_S_groebner(S, budget)
        if all(GS.contains(g) for g in gens_P_S(T).generators):
            return True
        GT = P_S_groebner(T, budget)
        return all(GT.contains(g) for g in gens_P_S(S).generators)

    out = []
    for S in sets:
        if all(not comparable(S, T) for T in sets if S < T):
            out.append(S)
    return out
