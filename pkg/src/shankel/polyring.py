"""Sparse polynomials over the rationals in lexicographic order.

A :class:`Ring` fixes an ordered list of variables, largest first; a monomial
is an exponent tuple aligned with that list, so lexicographic comparison of
monomials is plain tuple comparison.  Rings built from a :class:`Shape` use
normal-form indices as variable keys.  Auxiliary variables (for elimination)
are adjoined in front, i.e. larger than every ring variable.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .indices import Shape, enumerate_variables, normal_form

Monomial = Tuple[int, ...]


class RingMismatch(ValueError):
    """Operands live in different rings."""


class Ring:
    """Polynomial ring with lexicographic order on an ordered variable list."""

    def __init__(self, variables: Sequence[Hashable], shape: Optional[Shape] = None,
                 base: Optional["Ring"] = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.variables)
        self.position = {v: i for i, v in enumerate(self.variables)}
        self.shape = shape
        # the shape ring this one extends (itself for a shape ring)
        self.base = base if base is not None else self
        self._key = (self.variables, shape)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.shape is not None and self.base is self:
            return f"Ring({self.shape})"
        return f"Ring({list(self.variables)!r})"

    # construction helpers -------------------------------------------------

    def adjoin(self, names: Sequence[Hashable]) -> "Ring":
        """New ring with ``names`` prepended (greater than all current variables)."""
        return Ring(tuple(names) + self.variables, self.shape, self.base)

    def without(self, names: Iterable[Hashable]) -> "Ring":
        drop = set(names)
        kept = tuple(v for v in self.variables if v not in drop)
        if kept == self.base.variables:
            return self.base
        return Ring(kept, self.shape)

    def reordered(self, first: Sequence[Hashable]) -> "Ring":
        """Same variables with ``first`` moved to the front."""
        first = tuple(first)
        rest = tuple(v for v in self.variables if v not in set(first))
        return Ring(first + rest, self.shape, self.base)

    def key_of(self, var: Hashable) -> Hashable:
        if var in self.position:
            return var
        if self.shape is not None and isinstance(var, (tuple, list)):
            return normal_form(var, self.shape)
        raise KeyError(f"unknown variable {var!r}")

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def var_monomial(self, var: Hashable) -> Monomial:
        e = [0] * self.nvars
        e[self.position[self.key_of(var)]] = 1
        return tuple(e)

    def monomial(self, powers: Mapping[Hashable, int]) -> Monomial:
        e = [0] * self.nvars
        for v, k in powers.items():
            if k < 0:
                raise ValueError("negative exponent")
            e[self.position[self.key_of(v)]] += k
        return tuple(e)

    def index_monomial(self, indices: Iterable[Sequence[int]]) -> Monomial:
        """Monomial ``prod x_a`` over the given indices (with multiplicity)."""
        e = [0] * self.nvars
        for a in indices:
            e[self.position[self.key_of(tuple(a))]] += 1
        return tuple(e)

    def monomial_powers(self, m: Monomial) -> Dict[Hashable, int]:
        return {self.variables[i]: k for i, k in enumerate(m) if k}

    def monomial_factors(self, m: Monomial) -> List[Hashable]:
        """Variable keys of ``m`` repeated by exponent, largest variable first."""
        out = []
        for i, k in enumerate(m):
            out.extend([self.variables[i]] * k)
        return out

    def gen(self, var: Hashable) -> "Polynomial":
        return Polynomial(self, {self.var_monomial(var): Fraction(1)})

    def gens(self) -> List["Polynomial"]:
        return [self.gen(v) for v in self.variables]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.one_monomial(): Fraction(1)})

    def term(self, m: Monomial, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(m): Fraction(c)})

    def binomial(self, m1: Monomial, m2: Optional[Monomial]) -> "Polynomial":
        """``m1 - m2`` (or just ``m1`` when ``m2`` is None)."""
        d = {tuple(m1): Fraction(1)}
        if m2 is not None:
            m2 = tuple(m2)
            d[m2] = d.get(m2, 0) - 1
        return Polynomial(self, d)

    def product_of_variables(self, keys: Optional[Iterable[Hashable]] = None) -> Monomial:
        keys = self.variables if keys is None else keys
        return self.monomial({k: 1 for k in keys})


@lru_cache(maxsize=None)
def ring_of(shape: Shape) -> Ring:
    """The ring ``k[x_a]`` of an s-Hankel hypermatrix, variables largest first."""
    return Ring(enumerate_variables(shape), shape)


# monomial arithmetic ------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def compare_monomials(m1: Monomial, m2: Monomial) -> int:
    """-1, 0 or 1 according to the lexicographic order."""
    if len(m1) != len(m2):
        raise RingMismatch("monomials from rings of different size")
    m1, m2 = tuple(m1), tuple(m2)
    return (m1 > m2) - (m1 < m2)


def _support(m: Monomial) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, e) for i, e in enumerate(m) if e)


# polynomials --------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial; ``terms`` is sorted by decreasing monomial."""

    __slots__ = ("ring", "terms", "_dict")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, object]):
        self.ring = ring
        d = {}
        for m, c in terms.items():
            if c:
                if len(m) != ring.nvars:
                    raise RingMismatch("monomial length does not match ring")
                d[tuple(m)] = c if isinstance(c, Fraction) else Fraction(c)
        self._dict = d
        self.terms = tuple(sorted(d.items(), reverse=True))

    # basic queries

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def as_dict(self) -> Dict[Monomial, Fraction]:
        return dict(self._dict)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._dict.get(tuple(m), Fraction(0))

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms]

    @property
    def lm(self) -> Monomial:
        return self.terms[0][0]

    @property
    def lc(self) -> Fraction:
        return self.terms[0][1]

    @property
    def lt(self) -> Tuple[Monomial, Fraction]:
        return self.terms[0]

    def degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def is_constant(self) -> bool:
        return len(self.terms) == 1 and not any(self.terms[0][0])

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_pure_binomial(self) -> bool:
        """Zero, a scalar times a monomial, or a scalar times ``m1 - m2``."""
        if len(self.terms) <= 1:
            return True
        return len(self.terms) == 2 and self.terms[0][1] == -self.terms[1][1]

    def variables_used(self) -> set:
        used = set()
        for m, _ in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return {self.ring.variables[i] for i in used}

    # arithmetic

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial(self.ring, {self.ring.one_monomial(): Fraction(other)})

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._dict)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        d: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return Polynomial(self.ring, d)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.ring, {m: c * v for m, v in self.terms})

    def mul_monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.ring, {mono_mul(m, t): c * v for t, v in self.terms})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.lc)

    def embed(self, ring: Ring) -> "Polynomial":
        """Same polynomial read in ``ring`` (matching variables by key)."""
        if ring == self.ring:
            return self
        pos = [ring.position.get(v) for v in self.ring.variables]
        d = {}
        for m, c in self.terms:
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    if pos[i] is None:
                        raise RingMismatch(f"{self.ring.variables[i]!r} not in {ring!r}")
                    e[pos[i]] = k
            d[tuple(e)] = c
        return Polynomial(ring, d)

    # comparison / display

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if not self.terms:
            return other == 0
        return self.is_constant() and self.lc == other

    def __hash__(self):
        return hash(self.terms)

    def sort_key(self):
        return tuple(m for m, _ in self.terms)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            mono = _format_monomial(self.ring, m)
            if mono == "1":
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def to_json(self) -> list:
        return [
            [c.numerator, c.denominator,
             [[_key_json(self.ring.variables[i]), k] for i, k in enumerate(m) if k]]
            for m, c in self.terms
        ]

    @classmethod
    def from_json(cls, ring: Ring, data: list) -> "Polynomial":
        d: Dict[Monomial, Fraction] = {}
        for num, den, powers in data:
            e = [0] * ring.nvars
            for key, k in powers:
                key = tuple(key) if isinstance(key, list) else key
                e[ring.position[ring.key_of(key)]] += k
            m = tuple(e)
            d[m] = d.get(m, 0) + Fraction(num, den)
        return cls(ring, d)


def _key_json(key):
    return list(key) if isinstance(key, tuple) else key


def _format_var(key) -> str:
    if isinstance(key, tuple):
        return "x" + "".join(str(x) for x in key) if all(x < 10 for x in key) \
            else "x(" + ",".join(map(str, key)) + ")"
    return str(key)


def _format_monomial(ring: Ring, m: Monomial) -> str:
    parts = []
    for i, k in enumerate(m):
        if k:
            v = _format_var(ring.variables[i])
            parts.append(v if k == 1 else f"{v}^{k}")
    return "*".join(parts) if parts else "1"


# reduction -----------------------------------------------------------------

def is_pure_reducer(g: Polynomial) -> bool:
    """Monomial or scalar multiple of ``m1 - m2``: usable on the binomial path."""
    return g.is_pure_binomial() and not g.is_zero()


def _binomial_reducers(G: Sequence[Polynomial]):
    out = []
    for g in G:
        lead = g.lm
        trail = g.terms[1][0] if len(g.terms) == 2 else None
        out.append((lead, trail, _support(lead)))
    return out


def reduce_monomial(m: Monomial, reducers) -> Optional[Monomial]:
    """Normal form of a monomial against pure binomial reducers.

    ``reducers`` are ``(lead, trail, lead_support)`` triples; the result is a
    monomial (coefficient 1) or None when a monomial reducer kills it.
    """
    while True:
        for lead, trail, sup in reducers:
            for i, e in sup:
                if m[i] < e:
                    break
            else:
                if trail is None:
                    return None
                m = tuple(x - y + z for x, y, z in zip(m, lead, trail))
                break
        else:
            return m


def _general_reducers(G: Sequence[Polynomial]):
    out = []
    for g in G:
        lead, lc = g.terms[0]
        out.append((lead, lc, g.terms[1:], _support(lead)))
    return out


def reduce_dict(p: Dict[Monomial, Fraction], reducers) -> Dict[Monomial, Fraction]:
    """Full head-first reduction of a term dictionary (consumed)."""
    heap = [tuple(-x for x in m) for m in p]
    heapq.heapify(heap)
    queued = set(p)
    rem: Dict[Monomial, Fraction] = {}
    while heap:
        m = tuple(-x for x in heapq.heappop(heap))
        queued.discard(m)
        c = p.pop(m, None)
        if not c:
            continue
        for lead, lc, tail, sup in reducers:
            for i, e in sup:
                if m[i] < e:
                    break
            else:
                q = tuple(x - y for x, y in zip(m, lead))
                f = c / lc
                for tm, tc in tail:
                    mm = tuple(x + y for x, y in zip(q, tm))
                    v = p.get(mm, 0) - f * tc
                    if v:
                        p[mm] = v
                        if mm not in queued:
                            queued.add(mm)
                            heapq.heappush(heap, tuple(-x for x in mm))
                    else:
                        p.pop(mm, None)
                break
        else:
            rem[m] = c
    return rem


def reduce(p: Polynomial, G: Sequence[Polynomial], fast: Optional[bool] = None) -> Polynomial:
    """A normal form of ``p`` modulo the ordered list ``G``.

    The largest reducible term is always reduced first, using the first
    element of ``G`` whose leading monomial divides it.  When every input has
    at most two terms with coefficients +-1 the binomial path is used: each
    monomial is reduced on its own, which gives the same result.
    """
    G = [g for g in G if not g.is_zero()]
    for g in G:
        p._check(g)
    if not G or p.is_zero():
        return p
    if fast is None:
        fast = (len(p.terms) <= 2 and all(abs(c) == 1 for _, c in p.terms)
                and all(is_pure_reducer(g) for g in G))
    if fast:
        if not all(is_pure_reducer(g) for g in G):
            raise ValueError("binomial path needs monomial or pure-difference reducers")
        reducers = _binomial_reducers(G)
        d: Dict[Monomial, Fraction] = {}
        for m, c in p.terms:
            nf = reduce_monomial(m, reducers)
            if nf is not None:
                d[nf] = d.get(nf, 0) + c
        return Polynomial(p.ring, d)
    return Polynomial(p.ring, reduce_dict(p.as_dict(), _general_reducers(G)))


def divide(p: Polynomial, G: Sequence[Polynomial]) -> Tuple[List[Polynomial], Polynomial]:
    """Multivariate division: ``p = sum q_i g_i + rem`` with ``rem`` reduced."""
    ring = p.ring
    quots: List[Dict[Monomial, Fraction]] = [{} for _ in G]
    rem: Dict[Monomial, Fraction] = {}
    work = p.as_dict()
    while work:
        m = max(work)
        c = work[m]
        for k, g in enumerate(G):
            if g.is_zero():
                continue
            if mono_divides(g.lm, m):
                q = mono_div(m, g.lm)
                f = c / g.lc
                quots[k][q] = quots[k].get(q, 0) + f
                for tm, tc in g.terms:
                    mm = mono_mul(q, tm)
                    v = work.get(mm, 0) - f * tc
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
            del work[m]
    return [Polynomial(ring, q) for q in quots], Polynomial(ring, rem)


def exact_quotient(p: Polynomial, f: Polynomial) -> Polynomial:
    (q,), r = divide(p, [f])
    if not r.is_zero():
        raise ArithmeticError("division is not exact")
    return q
