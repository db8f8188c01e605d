"""Combinatorial membership test for binomials in the generalized-minor ideal.

Two monomials of equal degree with all factors in one connected class of a
switchable set are congruent modulo its ideal exactly when their signatures
agree.  The signature records, over the factor indices, the total s-norm and
the multisets of the components that are not mixed by s-equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .indices import Index, Shape
from .polyring import Monomial, Polynomial, ring_of
from .switchable import SwitchableSet


class MultiClassError(ValueError):
    """Factors spread over several classes and no split was requested."""


@dataclass(frozen=True)
class Signature:
    degree: int
    s_sum: Optional[int]
    components: Tuple[Tuple[int, ...], ...]
    tails: Tuple[Index, ...]


def signature_of_indices(factors: Sequence[Index], sh: Shape) -> Signature:
    s, t, n = sh.s, sh.t, sh.n
    if s == 1:
        comp_range, cut, s_sum = range(t), t, None
    elif s < t:
        comp_range, cut = range(s, t), t
        s_sum = sum(sum(a[:s]) for a in factors)
    else:
        comp_range, cut = range(0), s
        s_sum = sum(sum(a[:s]) for a in factors)
    comps = tuple(tuple(sorted(a[i] for a in factors)) for i in comp_range)
    tails = tuple(sorted(tuple(a[cut:]) for a in factors)) if cut < n else ()
    return Signature(len(factors), s_sum, comps, tails)


def signature(m: Monomial, sh: Shape) -> Signature:
    return signature_of_indices(ring_of(sh).monomial_factors(m), sh)


def _split_binomial(p: Polynomial):
    if p.is_zero():
        return None
    if len(p) == 1:
        return p.lm, None
    if not p.is_pure_binomial():
        raise ValueError(f"{p} is not a pure binomial")
    m1, m2 = p.monomials()
    return m1, m2


def binomial_in_Itilde(p: Polynomial, S: Optional[SwitchableSet] = None,
                       split: bool = False) -> bool:
    """Decide ``p`` in the ideal of ``S`` (default: the whole index set).

    ``p`` is a pure binomial ``m1 - m2`` (a single monomial is never a
    member, zero always is).  Every factor must lie in ``S``.  When ``S`` has
    several classes either pass ``split=True``, which compares the parts of
    ``m1`` and ``m2`` class by class, or decompose the binomial yourself.
    Factors confined to one class need neither.
    """
    sh = p.ring.shape
    if sh is None:
        raise ValueError("binomial must live in the ring of a shape")
    if S is None:
        S = SwitchableSet.full(sh)
    parts = _split_binomial(p)
    if parts is None:
        return True
    m1, m2 = parts
    if m2 is None:
        return False
    R = p.ring
    f1, f2 = R.monomial_factors(m1), R.monomial_factors(m2)
    inside = set(S.variables)
    if any(v not in inside for v in f1 + f2):
        raise ValueError("a factor lies outside the switchable set")
    if len(f1) != len(f2):
        return False
    classes = S.classes
    if len(classes) > 1:
        key = {v: k for k, C in enumerate(classes) for v in C.variables}
        if len({key[v] for v in f1 + f2}) > 1 and not split:
            raise MultiClassError("factors span several classes; pass split=True")
        by1: Dict[int, list] = {}
        by2: Dict[int, list] = {}
        for v in f1:
            by1.setdefault(key[v], []).append(v)
        for v in f2:
            by2.setdefault(key[v], []).append(v)
        if set(by1) != set(by2):
            return False
        return all(signature_of_indices(by1[k], sh) == signature_of_indices(by2[k], sh)
                   for k in by1)
    return signature_of_indices(f1, sh) == signature_of_indices(f2, sh)


def signature_counts(sh: Shape, d: int) -> int:
    """Number of distinct signatures of degree-``d`` monomials (brute force)."""
    from itertools import combinations_with_replacement

    R = ring_of(sh)
    seen = set()
    for combo in combinations_with_replacement(R.variables, d):
        seen.add(signature_of_indices(combo, sh))
    return len(seen)
