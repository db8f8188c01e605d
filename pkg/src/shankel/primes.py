"""Minimal primes, colon identities and primality certificates.

A binomial ideal is certified prime as follows.  Variables in its reduced
basis are split off.  The remaining part must consist of pure differences,
be saturated by the product of the remaining variables, and have a saturated
exponent-difference lattice (every elementary divisor equal to 1).  Such an
ideal is the toric ideal of that lattice, hence prime.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    colon_by_polynomial,
    intersect,
    radical_membership,
    saturate_by_monomial,
)
from .ideals import (
    P_S_groebner,
    generalized_minor,
    gens_I,
    gens_P_S,
    groebner_I,
    groebner_Itilde,
    monomial_multiplier,
    var_ideal,
)
from .indices import Shape, check_index, enumerate_variables
from .membership import binomial_in_Itilde
from .polyring import Monomial, Polynomial, reduce_monomial, ring_of, _binomial_reducers
from .switchable import (
    PreconditionError,
    SwitchableSet,
    catalog_maximal,
    maximal_switchable,
)


class CapExceeded(RuntimeError):
    pass


@dataclass
class PrimeCertificate:
    """``kind`` is monomial-prime, lattice-prime, split, or inapplicable."""

    kind: str
    certified: bool
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "certified": self.certified, "evidence": self.evidence}


def _is_variable(g: Polynomial) -> bool:
    return len(g) == 1 and sum(g.lm) == 1


def certify_prime(ideal, budget: Optional[int] = None) -> PrimeCertificate:
    """Certificate of primality for an ideal with a binomial reduced basis."""
    G = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal, budget)
    R = G.ring
    if G.is_unit():
        return PrimeCertificate("inapplicable", False, {"reason": "unit ideal"})
    variables = [g for g in G.elements if _is_variable(g)]
    rest = [g for g in G.elements if not _is_variable(g)]
    for g in rest:
        if len(g) == 1:
            return PrimeCertificate("inapplicable", False,
                                    {"reason": f"monomial {g} of degree > 1: not saturated by the variables"})
        if not g.is_pure_binomial():
            return PrimeCertificate("inapplicable", False,
                                    {"reason": f"{g} is not a pure difference"})
    var_keys = [R.variables[g.lm.index(1)] for g in variables]
    evidence: Dict[str, object] = {"variables": [_key(k) for k in var_keys]}
    if not rest:
        return PrimeCertificate("monomial-prime", True, evidence)
    outside = set(var_keys)
    p = R.product_of_variables([v for v in R.variables if v not in outside])
    B = Ideal(R, rest)
    GB = buchberger(B, budget)
    sat = saturate_by_monomial(B, p, method="sequential", budget=budget).groebner(budget)
    saturated = sat == GB
    vectors = []
    for g in rest:
        u, v = g.monomials()
        vectors.append([x - y for x, y in zip(u, v)])
    divisors = [int(d) for d in invariant_factors(Matrix(vectors), domain=ZZ) if d != 0]
    lattice_ok = all(abs(d) == 1 for d in divisors)
    evidence.update({
        "saturated": saturated,
        "lattice_rank": len(divisors),
        "elementary_divisors": divisors,
        "lattice_generators": vectors,
    })
    kind = "split" if variables else "lattice-prime"
    if not saturated:
        evidence["reason"] = "binomial part is not saturated by the variables"
        return PrimeCertificate("inapplicable", False, evidence)
    return PrimeCertificate(kind, lattice_ok, evidence)


def _key(k):
    return list(k) if isinstance(k, tuple) else k


# minimal primes ------------------------------------------------------------------------

@dataclass
class MinimalPrime:
    switchable: SwitchableSet
    ideal: Ideal
    groebner: GroebnerBasis

    @property
    def is_monomial(self) -> bool:
        return all(_is_variable(g) for g in self.groebner.elements)

    def to_json(self) -> dict:
        return {
            "switchable": self.switchable.to_json(),
            "generators": [g.to_json() for g in self.ideal.generators],
            "groebner": [g.to_json() for g in self.groebner.elements],
        }


def _order_primes(primes: List[MinimalPrime]) -> List[MinimalPrime]:
    def key(P):
        return (P.is_monomial, len(P.groebner), [g.sort_key() for g in P.groebner.elements])
    return sorted(primes, key=key)


def minimal_primes(sh: Shape, method: str = "auto", bound: Optional[int] = None,
                   budget: Optional[int] = None) -> List[MinimalPrime]:
    """``P_S`` for the maximal switchable sets, binomial prime first.

    ``catalog`` uses the closed-form lists, ``exhaustive`` enumerates, and
    ``auto`` prefers the catalog when one exists.
    """
    if method not in ("auto", "catalog", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    sets = None
    if method in ("auto", "catalog"):
        sets = catalog_maximal(sh)
        if sets is None and method == "catalog":
            raise PreconditionError("no closed-form catalog for this shape")
    if sets is None:
        sets = maximal_switchable(sh, bound=bound, budget=budget)
    out = [MinimalPrime(S, gens_P_S(S), P_S_groebner(S, budget)) for S in sets]
    return _order_primes(out)


def _witness_outside(G_small: GroebnerBasis, big: Ideal):
    for g in big.generators:
        if not G_small.contains(g):
            return g
    return None


def verify_minimal_primes(sh: Shape, primes: Sequence[MinimalPrime],
                          budget: Optional[int] = None) -> dict:
    """Containment of ``I``, pairwise incomparability with witnesses, certificates."""
    I = gens_I(sh)
    rows = []
    ok = True
    for k, P in enumerate(primes):
        contains = P.groebner.contains_all(I.generators)
        cert = certify_prime(P.groebner, budget)
        rows.append({"index": k, "contains_I": contains, "certificate": cert.to_json(),
                     "generators": len(P.groebner)})
        ok &= contains and cert.certified
    pairs = []
    for i, P in enumerate(primes):
        for j, Q in enumerate(primes):
            if i == j:
                continue
            w = _witness_outside(P.groebner, Q.ideal)
            pairs.append({"outside": i, "of": j, "witness": None if w is None else str(w)})
            ok &= w is not None
    return {"passed": bool(ok), "primes": rows, "incomparability": pairs}


# colon identities ----------------------------------------------------------------------

def colon_chain_check(sh: Shape, budget: Optional[int] = None,
                      method: str = "sequential") -> dict:
    """Both inclusions that close ``Itilde <= I:p <= I:p^inf <= Itilde``."""
    R = ring_of(sh)
    GI = groebner_I(sh)
    GT = groebner_Itilde(sh)
    p = R.product_of_variables()
    a_fail = [str(g) for g in GT.elements if not GI.contains(g.mul_monomial(p))]
    sat = saturate_by_monomial(gens_I(sh), p, method=method, budget=budget).groebner(budget)
    b_fail = []
    for g in sat.elements:
        if len(g) > 2 or not (len(g) == 1 or g.is_pure_binomial()) or not binomial_in_Itilde(g):
            b_fail.append(str(g))
    passed = not a_fail and not b_fail
    return {
        "check": "colon",
        "passed": passed,
        "itilde_times_p_in_I": not a_fail,
        "saturation_in_itilde": not b_fail,
        "failures": {"times_p": a_fail, "saturation": b_fail},
        "saturation_size": len(sat),
        "itilde_size": len(GT),
        "i_size": len(GI),
        "saturation_equals_itilde": sat == GT,
        "chain": "Itilde <= I:p <= I:p^inf <= Itilde" if passed else None,
    }


def _extremes(sh: Shape):
    return tuple([1] * sh.n), tuple(sh.r)


def radical_of_colon_check(sh: Shape, budget: Optional[int] = None,
                           compute_colon: bool = True) -> dict:
    """``rad(I : f) = (x_c : c not extreme)`` for ``f = f_{1,(1..1),(r..r)}``, ``s = n``.

    Membership of each variable in the radical is decided twice: by the
    Rabinowitsch test on ``I : f`` and by ``f in I : x^inf``.  The reverse
    containment is read off from the basis of ``I : f``; when that colon is
    not computed, it follows from ``I <= P``, ``f`` outside ``P`` and ``P``
    prime.
    """
    if sh.s != sh.n or sh.n < 3:
        raise PreconditionError("needs s = n >= 3")
    lo, hi = _extremes(sh)
    f = generalized_minor(sh, 1, lo, hi).monic()
    S4 = SwitchableSet.from_members(sh, [lo, hi])
    P = var_ideal(S4)
    GP = buchberger(P)
    I = gens_I(sh)
    report = {"check": "radcolon", "f": str(f),
              "prime": [str(g) for g in P.generators]}
    via_sat = {}
    for g in P.generators:
        sat = saturate_by_monomial(I, g.lm, budget=budget).groebner(budget)
        via_sat[str(g)] = sat.contains(f)
    report["variables_in_radical_via_saturation"] = via_sat
    ok = all(via_sat.values())
    if compute_colon:
        J = colon_by_polynomial(I, f, budget)
        GJ = J.groebner(budget)
        rab = {str(g): radical_membership(g, J, budget) for g in P.generators}
        inside = all(GP.contains(g) for g in GJ.elements)
        report.update({"colon_size": len(GJ), "colon": [str(g) for g in GJ.elements],
                       "variables_in_radical": rab, "colon_inside_prime": inside})
        ok &= all(rab.values()) and inside and rab == via_sat
    else:
        contains = GP.contains_all(I.generators)
        f_out = not GP.contains(f)
        report.update({"I_inside_prime": contains, "f_outside_prime": f_out,
                       "colon_inside_prime": contains and f_out})
        ok &= contains and f_out
    report["passed"] = bool(ok)
    return report


def midpoint_relation(a, b, c, sh: Shape) -> Polynomial:
    """``x_a x_b - x_c^2``, checked to lie in ``I``."""
    if sh.s != sh.n:
        raise PreconditionError("needs s = n")
    a, b, c = (check_index(x, sh) for x in (a, b, c))
    na, nb, nc = sum(a), sum(b), sum(c)
    if na - nb != 2 or nc != na - 1:
        raise PreconditionError("needs |a| - |b| = 2 and |c| = |a| - 1")
    R = ring_of(sh)
    g = R.binomial(R.index_monomial([a, b]), R.index_monomial([c, c]))
    if not groebner_I(sh).contains(g):
        raise AssertionError(f"{g} not in I")
    return g


def power_meets_p(a, sh: Shape, cap: Optional[int] = None):
    """``(p, mu)`` with the product of all variables dividing ``mu`` and ``x_a^p - mu`` in ``I``.

    Follows the doubling recursion: with one variable per norm, ``x_a^{m_b}``
    is congruent to ``x_b * alpha_b`` where ``m_b = 2^{| |a| - |b| |}``, each
    step using a midpoint relation.
    """
    if sh.s != sh.n:
        raise PreconditionError("needs s = n")
    a = check_index(a, sh)
    lo, hi = _extremes(sh)
    if sum(a) in (sum(lo), sum(hi)):
        raise PreconditionError("a must not be equivalent to an extreme index")
    R = ring_of(sh)
    variables = enumerate_variables(sh)
    by_norm = {sum(v): v for v in variables}
    ka = sum(a)
    m: Dict[int, int] = {ka: 1}
    alpha: Dict[int, Monomial] = {ka: R.one_monomial()}
    for k in range(ka - 1, sum(lo) - 1, -1):
        c, d = k + 1, k + 2
        m[k] = 2 * m[c]
        alpha[k] = _mono_mul(R.var_monomial(by_norm[d]), _mono_pow(alpha[c], 2))
    for k in range(ka + 1, sum(hi) + 1):
        c, d = k - 1, k - 2
        m[k] = 2 * m[c]
        alpha[k] = _mono_mul(R.var_monomial(by_norm[d]), _mono_pow(alpha[c], 2))
    p = sum(m.values())
    cap = 2 ** R.nvars if cap is None else cap
    if p > cap:
        raise CapExceeded(f"exponent {p} exceeds cap {cap}")
    mu = R.one_monomial()
    for k, v in by_norm.items():
        mu = _mono_mul(mu, _mono_mul(R.var_monomial(v), alpha[k]))
    xa = tuple(p * e for e in R.var_monomial(a))
    reducers = _binomial_reducers(groebner_I(sh).elements)
    if reduce_monomial(xa, reducers) != reduce_monomial(mu, reducers):
        raise AssertionError("witness does not reduce to the same normal form")
    return p, mu


def _mono_mul(x, y):
    return tuple(u + v for u, v in zip(x, y))


def _mono_pow(x, k):
    return tuple(u * k for u in x)


def non_primeness_witness(sh: Shape) -> dict:
    """``(m, f)`` with ``m f`` in ``I`` but neither factor in ``I`` (``n >= 3``)."""
    if sh.n < 3:
        raise PreconditionError("needs n >= 3")
    lo, hi = _extremes(sh)
    R = ring_of(sh)
    f = generalized_minor(sh, 1, lo, hi)
    m = monomial_multiplier(sh, 1, lo, hi)
    GI = groebner_I(sh)
    mf = GI.contains(f.mul_monomial(m))
    m_in = GI.contains(R.term(m))
    f_in = GI.contains(f)
    return {"check": "nonprime", "m": str(R.term(m)), "f": str(f),
            "mf_in_I": mf, "m_in_I": m_in, "f_in_I": f_in,
            "passed": bool(mf and not m_in and not f_in)}


def smallest_monomial_free(sh: Shape, primes: Sequence[MinimalPrime]) -> dict:
    """``Itilde`` has no monomials, and every other minimal prime misses a binomial of it."""
    GT = groebner_Itilde(sh)
    no_monomials = all(len(g) == 2 for g in GT.elements)
    witnesses = []
    for P in primes:
        if P.groebner == GT:
            continue
        w = next((g for g in GT.elements if not P.groebner.contains(g)), None)
        witnesses.append(None if w is None else str(w))
    return {"itilde_monomial_free": no_monomials, "witnesses": witnesses,
            "passed": no_monomials and all(w is not None for w in witnesses)}


def intersection_question(sh: Shape, budget: Optional[int] = None) -> dict:
    """Evidence for whether ``I = Itilde  intersect (I : f)`` (``s = n``)."""
    if sh.s != sh.n or sh.n < 3:
        raise PreconditionError("needs s = n >= 3")
    lo, hi = _extremes(sh)
    f = generalized_minor(sh, 1, lo, hi).monic()
    I = gens_I(sh)
    J = colon_by_polynomial(I, f, budget)
    X = intersect(groebner_Itilde(sh).ideal(), J, budget).groebner(budget)
    return {"check": "intersection", "equal": X == groebner_I(sh),
            "intersection_size": len(X), "i_size": len(groebner_I(sh))}
