"""Buchberger's algorithm and the ideal operations built on it.

Two arithmetics share one driver: a binomial one, used when every generator
is a monomial or a pure difference ``m1 - m2`` (that class is closed under
S-polynomials and reduction, so no coefficients are ever touched), and a
general one over the rationals.  Pairs are processed by the normal strategy
(smallest lcm degree first) with the Gebauer-Moller criteria.
"""
from __future__ import annotations

import heapq
import os
import time
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .polyring import (
    Monomial,
    Polynomial,
    Ring,
    RingMismatch,
    _support,
    is_pure_reducer,
    mono_coprime,
    mono_divides,
    mono_lcm,
    reduce,
    reduce_dict,
    reduce_monomial,
    exact_quotient,
)

DEFAULT_GB_BUDGET = int(os.environ.get("SHANKEL_GB_BUDGET", "2000000"))


class BudgetExceeded(RuntimeError):
    """A computation hit its configured step budget."""


class Ideal:
    """An ideal given by generators in one ring; zero generators are dropped."""

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = (), label: str = "",
                 provenance: Optional[Sequence] = None):
        gens = []
        prov = []
        provenance = list(provenance) if provenance is not None else None
        for k, g in enumerate(generators):
            if g.ring != ring:
                raise RingMismatch(f"generator in {g.ring!r}, ideal in {ring!r}")
            if not g.is_zero():
                gens.append(g)
                if provenance is not None:
                    prov.append(provenance[k])
        self.ring = ring
        self.generators = tuple(gens)
        self.label = label
        self.provenance = tuple(prov) if provenance is not None else None
        self._gb: Optional[GroebnerBasis] = None

    @property
    def shape(self):
        return self.ring.shape

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        name = f"{self.label} " if self.label else ""
        return f"<Ideal {name}with {len(self.generators)} generators in {self.ring!r}>"

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def groebner(self, budget: Optional[int] = None) -> "GroebnerBasis":
        if self._gb is None:
            self._gb = buchberger(self, budget=budget)
        return self._gb

    def to_json(self) -> dict:
        out = {"label": self.label, "generators": [g.to_json() for g in self.generators]}
        if self.provenance is not None:
            out["provenance"] = [_prov_json(p) for p in self.provenance]
        return out


def _prov_json(p):
    i, a, b = p
    return {"component": sorted(i) if isinstance(i, (set, frozenset, tuple, list)) else i,
            "a": list(a), "b": list(b)}


class GroebnerBasis:
    """Reduced Groebner basis, monic and sorted by decreasing leading monomial."""

    def __init__(self, ring: Ring, elements: Sequence[Polynomial], stats: Optional[dict] = None):
        self.ring = ring
        self.elements = tuple(elements)
        self.stats = dict(stats or {})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.elements == other.elements)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"<GroebnerBasis of {len(self.elements)} elements in {self.ring!r}>"

    def leading_monomials(self) -> List[Monomial]:
        return [g.lm for g in self.elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def reduce(self, p: Polynomial) -> Polynomial:
        return reduce(p, self.elements)

    def contains(self, p: Polynomial) -> bool:
        return reduce(p, self.elements).is_zero()

    def contains_all(self, polys: Iterable[Polynomial]) -> bool:
        return all(self.contains(p) for p in polys)

    def ideal(self, label: str = "") -> Ideal:
        return Ideal(self.ring, self.elements, label)

    def to_json(self, timings: bool = False) -> dict:
        stats = dict(self.stats)
        if not timings:
            stats.pop("elapsed_s", None)
        return {"elements": [g.to_json() for g in self.elements], "stats": stats}


# arithmetics ----------------------------------------------------------------

class _BinomialArith:
    """Elements are ``(lead, trail)`` with ``lead > trail``; trail None for a monomial."""

    name = "binomial"

    @staticmethod
    def from_poly(p: Polynomial):
        if p.is_zero():
            return None
        return (p.lm, p.terms[1][0] if len(p.terms) == 2 else None)

    @staticmethod
    def to_poly(ring: Ring, e) -> Polynomial:
        return ring.binomial(e[0], e[1])

    @staticmethod
    def lead(e) -> Monomial:
        return e[0]

    @staticmethod
    def reducer(e):
        return (e[0], e[1], _support(e[0]))

    @staticmethod
    def spoly(e1, e2, lcm):
        t1 = None if e1[1] is None else tuple(l - u + v for l, u, v in zip(lcm, e1[0], e1[1]))
        t2 = None if e2[1] is None else tuple(l - u + v for l, u, v in zip(lcm, e2[0], e2[1]))
        return (t2, t1)

    @staticmethod
    def normal_form(e, reducers):
        a, b = e
        a = None if a is None else reduce_monomial(a, reducers)
        b = None if b is None else reduce_monomial(b, reducers)
        if a == b:
            return None
        if a is None:
            return (b, None)
        if b is None:
            return (a, None)
        return (a, b) if a > b else (b, a)


class _GeneralArith:
    """Elements are monic term tuples sorted by decreasing monomial."""

    name = "general"

    @staticmethod
    def _pack(d: Dict[Monomial, Fraction]):
        if not d:
            return None
        terms = sorted(d.items(), reverse=True)
        lc = terms[0][1]
        if lc != 1:
            terms = [(m, c / lc) for m, c in terms]
        return tuple(terms)

    @classmethod
    def from_poly(cls, p: Polynomial):
        return cls._pack(p.as_dict())

    @staticmethod
    def to_poly(ring: Ring, e) -> Polynomial:
        return Polynomial(ring, dict(e))

    @staticmethod
    def lead(e) -> Monomial:
        return e[0][0]

    @staticmethod
    def reducer(e):
        return (e[0][0], Fraction(1), e[1:], _support(e[0][0]))

    @staticmethod
    def spoly(e1, e2, lcm):
        d: Dict[Monomial, Fraction] = {}
        q1 = tuple(x - y for x, y in zip(lcm, e1[0][0]))
        q2 = tuple(x - y for x, y in zip(lcm, e2[0][0]))
        for m, c in e1[1:]:
            mm = tuple(x + y for x, y in zip(q1, m))
            d[mm] = d.get(mm, 0) + c
        for m, c in e2[1:]:
            mm = tuple(x + y for x, y in zip(q2, m))
            v = d.get(mm, 0) - c
            if v:
                d[mm] = v
            else:
                d.pop(mm, None)
        return d

    @classmethod
    def normal_form(cls, d, reducers):
        if not isinstance(d, dict):
            d = dict(d)
        return cls._pack(reduce_dict(d, reducers))


def _choose_arith(polys: Sequence[Polynomial]):
    return _BinomialArith if all(is_pure_reducer(p) or p.is_zero() for p in polys) else _GeneralArith


# driver -------------------------------------------------------------------------

def buchberger(ideal: Ideal, budget: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` for the lexicographic order."""
    start = time.perf_counter()
    budget = DEFAULT_GB_BUDGET if budget is None else budget
    ring = ideal.ring
    arith = _choose_arith(ideal.generators)
    stats = {"engine": arith.name, "pairs_created": 0, "pairs_pruned": 0,
             "pairs_reduced": 0, "zero_reductions": 0}

    elems: List = []          # every element ever inserted
    leads: List[Monomial] = []
    active: List[int] = []    # indices into elems, insertion order
    reducers: List = []
    pairs: Dict[Tuple[int, int], Monomial] = {}
    heap: List = []
    steps = 0

    def tick():
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"Groebner computation exceeded {budget} steps")

    def insert(e):
        h = len(elems)
        elems.append(e)
        lh = arith.lead(e)
        leads.append(lh)
        # Gebauer-Moller update
        cand = [(g, mono_lcm(lh, leads[g])) for g in active]
        stats["pairs_created"] += len(cand)
        keep = []
        for k, (g, l1) in enumerate(cand):
            if mono_coprime(lh, leads[g]):
                keep.append((g, l1))
                continue
            dominated = any(mono_divides(l2, l1) for _, l2 in cand[k + 1:]) or \
                any(mono_divides(l2, l1) for _, l2 in keep)
            if not dominated:
                keep.append((g, l1))
        new_pairs = [(g, l1) for g, l1 in keep if not mono_coprime(lh, leads[g])]
        stats["pairs_pruned"] += len(cand) - len(new_pairs)
        for (i, j), l in list(pairs.items()):
            if (mono_divides(lh, l) and mono_lcm(leads[i], lh) != l
                    and mono_lcm(lh, leads[j]) != l):
                del pairs[(i, j)]
                stats["pairs_pruned"] += 1
        for g, l1 in new_pairs:
            pairs[(g, h)] = l1
            heapq.heappush(heap, (sum(l1), l1, g, h))
        kept = [g for g in active if not mono_divides(lh, leads[g])]
        if len(kept) != len(active):
            active[:] = kept
            reducers[:] = [arith.reducer(elems[g]) for g in active]
        active.append(h)
        reducers.append(arith.reducer(e))

    for p in ideal.generators:
        tick()
        e = arith.normal_form(arith.from_poly(p) if arith is _BinomialArith
                              else p.as_dict(), reducers)
        if e is not None:
            insert(e)

    while pairs:
        _, l, i, j = heapq.heappop(heap)
        if pairs.get((i, j)) != l:
            continue
        del pairs[(i, j)]
        tick()
        stats["pairs_reduced"] += 1
        e = arith.normal_form(arith.spoly(elems[i], elems[j], l), reducers)
        if e is None:
            stats["zero_reductions"] += 1
            continue
        insert(e)

    # interreduce the minimal basis
    final = []
    for k, g in enumerate(active):
        others = [reducers[m] for m in range(len(active)) if m != k]
        e = elems[g]
        if arith is _BinomialArith:
            e = arith.normal_form(e, others)
        else:
            e = arith.normal_form(dict(e), others)
        final.append(arith.to_poly(ring, e))
    final.sort(key=Polynomial.sort_key, reverse=True)
    stats["basis_size"] = len(final)
    stats["max_degree"] = max((g.degree() for g in final), default=0)
    stats["elapsed_s"] = round(time.perf_counter() - start, 6)
    return GroebnerBasis(ring, final, stats)


def groebner(polys: Sequence[Polynomial], ring: Optional[Ring] = None,
             budget: Optional[int] = None) -> GroebnerBasis:
    if ring is None:
        if not polys:
            raise ValueError("ring required for an empty generator list")
        ring = polys[0].ring
    return buchberger(Ideal(ring, polys), budget=budget)


def reduce_to_groebner(G: Sequence[Polynomial], ring: Optional[Ring] = None) -> GroebnerBasis:
    """Reduced form of a set already known to be a Groebner basis.

    Keeps one element per minimal leading monomial, interreduces, makes the
    result monic and sorts it; no S-pairs are formed.
    """
    G = [g for g in G if not g.is_zero()]
    if ring is None:
        if not G:
            raise ValueError("ring required for an empty list")
        ring = G[0].ring
    G = sorted(G, key=lambda g: (g.lm, len(g.terms), g.sort_key()))
    minimal: List[Polynomial] = []
    for g in G:
        if not any(mono_divides(h.lm, g.lm) for h in minimal):
            minimal = [h for h in minimal if not mono_divides(g.lm, h.lm)]
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        out.append(reduce(g, others).monic())
    out.sort(key=Polynomial.sort_key, reverse=True)
    return GroebnerBasis(ring, out, {"engine": "interreduce"})


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    l = mono_lcm(f.lm, g.lm)
    return (f.mul_monomial(tuple(x - y for x, y in zip(l, f.lm)), 1 / f.lc)
            - g.mul_monomial(tuple(x - y for x, y in zip(l, g.lm)), 1 / g.lc))


def failing_s_pair(G: Sequence[Polynomial], skip_coprime: bool = True):
    """First pair ``(i, j)`` whose S-polynomial does not reduce to zero, or None.

    Pairs with coprime leading monomials are skipped when ``skip_coprime``;
    their S-polynomials always reduce to zero.
    """
    G = [g for g in G if not g.is_zero()]
    for j in range(len(G)):
        for i in range(j):
            if skip_coprime and mono_coprime(G[i].lm, G[j].lm):
                continue
            if not reduce(s_polynomial(G[i], G[j]), G).is_zero():
                return (i, j)
    return None


def is_groebner_basis(G: Sequence[Polynomial], skip_coprime: bool = True) -> bool:
    """Buchberger's criterion on the list ``G``."""
    return failing_s_pair(G, skip_coprime) is None


def ideal_membership(p: Polynomial, G: GroebnerBasis) -> bool:
    return G.contains(p)


def same_ideal(a: Ideal, b: Ideal, budget: Optional[int] = None) -> bool:
    return a.groebner(budget) == b.groebner(budget)


def contains_ideal(big: Ideal, small: Ideal, budget: Optional[int] = None) -> bool:
    G = big.groebner(budget)
    return all(G.contains(g) for g in small.generators)


# elimination and friends ----------------------------------------------------------

def fresh_name(ring: Ring, stem: str) -> str:
    name, k = stem, 0
    while name in ring.position:
        k += 1
        name = f"{stem}{k}"
    return name


def eliminate(ideal: Ideal, drop: Iterable[Hashable], budget: Optional[int] = None) -> Ideal:
    """Generators of the intersection of ``ideal`` with the subring without ``drop``."""
    ring = ideal.ring
    drop = [ring.key_of(v) for v in drop]
    if not drop:
        return GroebnerBasis.ideal(ideal.groebner(budget), ideal.label)
    big = ring.reordered(drop)
    G = buchberger(Ideal(big, [g.embed(big) for g in ideal.generators]), budget=budget)
    k = len(drop)
    small = ring.without(drop)
    kept = [g.embed(small) for g in G.elements if not any(any(m[:k]) for m, _ in g.terms)]
    return Ideal(small, kept, ideal.label)


def saturate_by_monomial(ideal: Ideal, m: Monomial, method: str = "aux",
                         budget: Optional[int] = None) -> Ideal:
    """``I : m^infinity``.

    ``aux`` adjoins a variable ``z`` above everything, adds ``z*m - 1`` and
    eliminates ``z``; ``sequential`` saturates by one variable of ``m`` at a
    time the same way.
    """
    ring = ideal.ring
    if not any(m):
        raise ValueError("saturation by a constant")
    if method == "sequential":
        out = ideal
        for i, e in enumerate(m):
            if e:
                v = tuple(1 if k == i else 0 for k in range(ring.nvars))
                out = saturate_by_monomial(out, v, "aux", budget)
        return Ideal(ring, out.generators, ideal.label)
    if method != "aux":
        raise ValueError(f"unknown saturation method {method!r}")
    z = fresh_name(ring, "_z")
    big = ring.adjoin([z])
    zm = big.term((1,) + tuple(m)) - big.one()
    J = Ideal(big, [g.embed(big) for g in ideal.generators] + [zm])
    return Ideal(ring, eliminate(J, [z], budget).generators, ideal.label)


def colon_by_polynomial(ideal: Ideal, f: Polynomial, budget: Optional[int] = None) -> Ideal:
    """``I : (f)``, computed as ``(I  intersect (f)) / f``."""
    ring = ideal.ring
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    if f.is_constant():
        return Ideal(ring, ideal.generators, ideal.label)
    inter = intersect(ideal, Ideal(ring, [f]), budget)
    quots = [exact_quotient(g, f) for g in inter.generators]
    return Ideal(ring, GroebnerBasis.ideal(buchberger(Ideal(ring, quots), budget)).generators)


def intersect(a: Ideal, b: Ideal, budget: Optional[int] = None) -> Ideal:
    """``a  intersect b`` via ``t*a + (1-t)*b`` and elimination of ``t``."""
    ring = a.ring
    t = fresh_name(ring, "_t")
    big = ring.adjoin([t])
    tv = big.gen(t)
    gens = [tv * g.embed(big) for g in a.generators]
    gens += [(big.one() - tv) * g.embed(big) for g in b.generators]
    return Ideal(ring, eliminate(Ideal(big, gens), [t], budget).generators)


def radical_membership(g: Polynomial, ideal: Ideal, budget: Optional[int] = None) -> bool:
    """True iff ``g`` lies in the radical (``1 in I + (z*g - 1)``)."""
    if g.is_zero():
        return True
    ring = ideal.ring
    z = fresh_name(ring, "_z")
    big = ring.adjoin([z])
    zg = big.gen(z) * g.embed(big) - big.one()
    G = buchberger(Ideal(big, [h.embed(big) for h in ideal.generators] + [zg]), budget)
    return G.is_unit()
