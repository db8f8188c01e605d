"""Hilbert functions and polynomials of the quotient rings.

Three independent routes are offered: the closed forms, counting distinct
signatures (classes of monomials modulo the generalized-minor ideal), and
counting standard monomials of a Groebner basis.  A Hilbert-series numerator
for monomial ideals gives exact values at any degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import GroebnerBasis
from .indices import Shape
from .polyring import Monomial, mono_divides
from .membership import signature_counts


class TableTooShort(ValueError):
    """Not enough values to detect a stable Hilbert polynomial."""


def hilbert_closed_form(sh: Shape, d: int) -> int:
    """Hilbert function of ``R / Itilde`` in degree ``d``."""
    if d < 0:
        return 0
    r, s, t, n = sh.r, sh.s, sh.t, sh.n

    def tail_factor(cut):
        size = 1
        for x in r[cut:]:
            size *= x
        return comb(d + size - 1, d)

    if s == 1:
        out = tail_factor(t) if t < n else 1
        for i in range(t):
            out *= comb(d + r[i] - 1, d)
        return out
    lead = d * sum(x - 1 for x in r[:s]) + 1
    if s <= t:
        out = lead * (tail_factor(t) if t < n else 1)
        for i in range(s, t):
            out *= comb(d + r[i] - 1, d)
        return out
    return lead * (tail_factor(s) if s < n else 1)


def hilbert_by_signatures(sh: Shape, d: int) -> int:
    return signature_counts(sh, d)


def standard_monomials(G: GroebnerBasis, d: int) -> int:
    """Number of degree-``d`` monomials not divisible by any leading monomial."""
    return count_standard(G.leading_monomials(), G.ring.nvars, d)


def count_standard(leads: Sequence[Monomial], nvars: int, d: int) -> int:
    leads = list(leads)
    if any(sum(m) == 0 for m in leads):
        return 0
    exps = [0] * nvars
    total = 0

    def divisible():
        return any(all(e >= l for e, l in zip(exps, m)) for m in leads)

    def rec(i, remaining):
        nonlocal total
        if i == nvars - 1:
            exps[i] = remaining
            if not divisible():
                total += 1
            exps[i] = 0
            return
        for k in range(remaining, -1, -1):
            exps[i] = k
            if k and divisible():
                continue
            rec(i + 1, remaining - k)
        exps[i] = 0

    if nvars == 0:
        return 1 if d == 0 else 0
    rec(0, d)
    return total


# Hilbert series ------------------------------------------------------------------------

def _minimalize(gens: List[Monomial]) -> List[Monomial]:
    gens = sorted(set(gens), key=sum)
    out: List[Monomial] = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def _poly_mul(p: Dict[int, int], q: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _poly_add(p: Dict[int, int], q: Dict[int, int]) -> Dict[int, int]:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def series_numerator(leads: Sequence[Monomial]) -> Dict[int, int]:
    """``N(t)`` with ``HS(R/(leads)) = N(t) / (1-t)^nvars``, by pivoting on a variable."""
    gens = _minimalize([tuple(m) for m in leads])
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    used = [i for i in range(len(gens[0])) if any(g[i] for g in gens)]
    counts = {i: sum(1 for g in gens if g[i]) for i in used}
    if all(c == 1 for c in counts.values()):
        out = {0: 1}
        for g in gens:
            out = _poly_mul(out, {0: 1, sum(g): -1})
        return out
    x = max(used, key=lambda i: (counts[i], -i))
    e = min(g[x] for g in gens if g[x])
    pivot = tuple(e if i == x else 0 for i in range(len(gens[0])))
    plus = series_numerator(gens + [pivot])
    quot = [tuple(max(v - e, 0) if i == x else v for i, v in enumerate(g)) for g in gens]
    colon = series_numerator(quot)
    return _poly_add(plus, {k + e: v for k, v in colon.items()})


def hilbert_from_numerator(num: Dict[int, int], nvars: int, d: int) -> int:
    if nvars == 0:
        return num.get(d, 0)
    return sum(c * comb(d - k + nvars - 1, nvars - 1) for k, c in num.items() if d >= k)


# polynomials ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial in ``d`` with rational coefficients, lowest degree first."""

    coefficients: Tuple[Fraction, ...]

    def __call__(self, d: int) -> Fraction:
        return sum((c * d ** k for k, c in enumerate(self.coefficients)), Fraction(0))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1 if any(self.coefficients) else -1

    def __str__(self):
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k) else str(mag)
            if k:
                if mag.denominator != 1:
                    body += "*"
                body += "d" if k == 1 else f"d^{k}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {sg} {b}" for sg, b in terms[1:])

    def to_json(self):
        return [str(c) for c in self.coefficients]


def interpolate(points: Sequence[Tuple[int, int]]) -> HilbertPolynomial:
    """Lagrange interpolation through ``(d, value)`` pairs."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for j, (xj, yj) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == j:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xm * basis[k + 1]
            denom *= xj - xm
        for k, c in enumerate(basis):
            coeffs[k] += yj * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return HilbertPolynomial(tuple(coeffs))


def hilbert_polynomial(values: Sequence[int], start: int = 0) -> Tuple[HilbertPolynomial, int]:
    """Polynomial fitted to the tail of a table, and the degree where it takes over.

    The degree of the polynomial is the order of the first finite difference
    whose last three entries agree.
    """
    values = list(values)
    diffs = values
    for k in range(len(values)):
        if len(diffs) < 3:
            break
        if diffs[-1] == diffs[-2] == diffs[-3]:
            pts = [(start + len(values) - 1 - j, values[-1 - j]) for j in range(k + 1)]
            P = interpolate(pts)
            d0 = len(values)
            while d0 > 0 and P(start + d0 - 1) == values[d0 - 1]:
                d0 -= 1
            return P, start + d0
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    raise TableTooShort("table too short to detect a stable Hilbert polynomial")


def polynomial_from_numerator(num: Dict[int, int], nvars: int) -> HilbertPolynomial:
    """Exact Hilbert polynomial: the numerator formula is polynomial past ``deg N``."""
    top = max(num) if num else 0
    pts = [(d, hilbert_from_numerator(num, nvars, d)) for d in range(top, top + nvars + 1)]
    return interpolate(pts)


@dataclass
class HilbertTable:
    shape: Shape
    label: str
    method: str
    values: List[int]
    polynomial: Optional[HilbertPolynomial] = None
    stable_from: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"shape": self.shape.to_json(), "ideal": self.label, "method": self.method,
               "values": list(self.values)}
        if self.polynomial is not None:
            out["polynomial"] = str(self.polynomial)
            out["coefficients"] = self.polynomial.to_json()
            out["stable_from"] = self.stable_from
        out.update(self.extra)
        return out


def hilbert_table(sh: Shape, max_degree: int, method: str = "closed",
                  G: Optional[GroebnerBasis] = None, label: str = "Itilde") -> HilbertTable:
    """Values for ``d = 0..max_degree`` by ``closed``, ``signatures``, ``standard`` or ``series``."""
    if method == "closed":
        vals = [hilbert_closed_form(sh, d) for d in range(max_degree + 1)]
    elif method == "signatures":
        vals = [hilbert_by_signatures(sh, d) for d in range(max_degree + 1)]
    elif method in ("standard", "series"):
        if G is None:
            from .ideals import gens_I, gens_Itilde
            G = (gens_I(sh) if label == "I" else gens_Itilde(sh)).groebner()
        if method == "standard":
            vals = [standard_monomials(G, d) for d in range(max_degree + 1)]
        else:
            num = series_numerator(G.leading_monomials())
            vals = [hilbert_from_numerator(num, G.ring.nvars, d) for d in range(max_degree + 1)]
    else:
        raise ValueError(f"unknown method {method!r}")
    table = HilbertTable(sh, label, method, vals)
    try:
        table.polynomial, table.stable_from = hilbert_polynomial(vals)
    except TableTooShort:
        pass
    return table


hilbert_standard_monomials = standard_monomials
