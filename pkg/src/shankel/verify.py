"""Verification suites run by the ``verify`` subcommand and the acceptance tests.

Each check returns a JSON-ready dict with at least ``check`` and ``passed``;
``passed`` is None when the check does not apply to the shape.
"""
from __future__ import annotations

import random
from typing import Optional

from .groebner import BudgetExceeded, buchberger, is_groebner_basis, reduce_to_groebner, Ideal
from .hilbert import (
    hilbert_by_signatures,
    hilbert_closed_form,
    hilbert_from_numerator,
    series_numerator,
    standard_monomials,
)
from .ideals import gens_I, gens_Itilde, groebner_Itilde, structured_basis
from .indices import Shape, differing_components, enumerate_variables, equivalence_class, switch
from .iso import build_psi, check_iso_hypotheses, curve_params, scroll_report, verify_iso
from .membership import binomial_in_Itilde
from .polyring import ring_of
from .primes import (
    colon_chain_check,
    minimal_primes,
    radical_of_colon_check,
    smallest_monomial_free,
    verify_minimal_primes,
)
from .switchable import EnumerationBoundExceeded, SwitchableSet, catalog_maximal


def skipped(name: str, reason: str) -> dict:
    return {"check": name, "passed": None, "skipped": reason}


def random_binomials(sh: Shape, count: int, rng: random.Random, max_degree: int = 4):
    """Seeded pure binomials: half random pairs, half random walks along minor moves."""
    R = ring_of(sh)
    variables = list(enumerate_variables(sh))
    out = []
    for k in range(count):
        d = rng.randint(1, max_degree)
        m1 = [rng.choice(variables) for _ in range(d)]
        if k % 2 == 0:
            m2 = [rng.choice(variables) for _ in range(d)]
        else:
            m2 = list(m1)
            for _ in range(rng.randint(1, 4)):
                if len(m2) < 2:
                    break
                p, q = rng.sample(range(len(m2)), 2)
                a = rng.choice(equivalence_class(m2[p], sh))
                b = rng.choice(equivalence_class(m2[q], sh))
                D = [i for i in differing_components(a, b) if i <= sh.t]
                if D:
                    i = rng.choice(D)
                    m2[p], m2[q] = switch({i}, a, b), switch({i}, b, a)
        out.append(R.binomial(R.index_monomial(m1), R.index_monomial(m2)))
    return out


def check_criterion(sh: Shape, samples: int = 500, seed: int = 0) -> dict:
    rng = random.Random(seed)
    G = groebner_Itilde(sh)
    agree = 0
    positives = 0
    mismatches = []
    for p in random_binomials(sh, samples, rng):
        fast = binomial_in_Itilde(p)
        slow = G.contains(p)
        positives += slow
        if fast == slow:
            agree += 1
        elif len(mismatches) < 5:
            mismatches.append(str(p))
    return {"check": "criterion", "passed": agree == samples, "samples": samples,
            "agreements": agree, "members": positives, "mismatches": mismatches, "seed": seed}


def check_groebner(sh: Shape, seed: int = 0) -> dict:
    full = SwitchableSet.full(sh)
    G_S = structured_basis(full)
    direct = buchberger(gens_Itilde(sh))
    shuffled = list(gens_Itilde(sh).generators)
    random.Random(seed).shuffle(shuffled)
    again = buchberger(Ideal(ring_of(sh), shuffled))
    is_gb = is_groebner_basis(G_S)
    reduced_equal = reduce_to_groebner(G_S, ring_of(sh)) == direct
    gens_reduce = direct.contains_all(gens_Itilde(sh).generators) and direct.contains_all(
        gens_I(sh).generators)
    return {"check": "groebner", "passed": is_gb and reduced_equal and gens_reduce and again == direct,
            "structured_is_groebner": is_gb, "reduced_equals_buchberger": reduced_equal,
            "generators_reduce_to_zero": gens_reduce, "order_independent": again == direct,
            "structured_size": len(G_S), "reduced_size": len(direct)}


def check_hilbert(sh: Shape, max_degree: int = 6) -> dict:
    G = groebner_Itilde(sh)
    num = series_numerator(G.leading_monomials())
    rows = []
    ok = True
    for d in range(max_degree + 1):
        vals = {"closed": hilbert_closed_form(sh, d), "signatures": hilbert_by_signatures(sh, d),
                "standard": standard_monomials(G, d),
                "series": hilbert_from_numerator(num, G.ring.nvars, d)}
        same = len(set(vals.values())) == 1
        ok &= same
        rows.append({"d": d, **vals, "agree": same})
    return {"check": "hilbert", "passed": ok, "max_degree": max_degree, "table": rows}


def check_primes(sh: Shape, budget: Optional[int] = None, bound: Optional[int] = None) -> dict:
    primes = minimal_primes(sh, bound=bound, budget=budget)
    report = verify_minimal_primes(sh, primes, budget)
    routes = None
    if catalog_maximal(sh) is not None:
        try:
            exhaustive = minimal_primes(sh, method="exhaustive", bound=bound, budget=budget)
            routes = [P.switchable for P in exhaustive] == [P.switchable for P in primes]
        except EnumerationBoundExceeded:
            routes = None
    smallest = smallest_monomial_free(sh, primes)
    passed = report["passed"] and routes is not False and smallest["passed"]
    return {"check": "primes", "passed": passed, "count": len(primes),
            "routes_agree": routes, "smallest_monomial_free": smallest,
            "primes": [P.to_json() for P in primes], "verification": report}


def check_iso(sh: Shape, other: Optional[Shape] = None, gb_images: bool = False) -> dict:
    out = {"check": "iso", "parts": {}}
    ok = True
    ran = False
    if other is not None:
        if not check_iso_hypotheses(sh, other):
            out["parts"]["other"] = {"hypotheses": False}
            ok = False
        else:
            w = build_psi(sh, other)
            good = verify_iso(w, gb_images)
            out["parts"]["other"] = w.to_json()
            ok &= good
        ran = True
    if sh.s == sh.n and sh.n >= 2:
        m, target = curve_params(sh)
        w = build_psi(sh, target)
        good = verify_iso(w, gb_images)
        out["parts"]["curve"] = {"m": m, "target": target.to_json(), "verified": good}
        ok &= good
        ran = True
    if sh.n >= 3 and sh.s == sh.n - 1:
        rep = scroll_report(sh)
        out["parts"]["scroll"] = rep
        ok &= rep["passed"]
        ran = True
    if not ran:
        return skipped("iso", "no curve, scroll or explicit target applies")
    out["passed"] = bool(ok)
    return out


def check_colon(sh: Shape, budget: Optional[int] = None) -> dict:
    return colon_chain_check(sh, budget)


def check_radcolon(sh: Shape, budget: Optional[int] = None) -> dict:
    if sh.s != sh.n or sh.n < 3:
        return skipped("radcolon", "needs s = n >= 3")
    try:
        return radical_of_colon_check(sh, budget)
    except BudgetExceeded:
        rep = radical_of_colon_check(sh, budget, compute_colon=False)
        rep["colon_budget_exceeded"] = True
        return rep


CHECKS = ["groebner", "criterion", "hilbert", "colon", "radcolon", "primes", "iso"]


def run_check(name: str, sh: Shape, seed: int = 0, samples: int = 500, max_degree: int = 6,
              budget: Optional[int] = None, bound: Optional[int] = None,
              other: Optional[Shape] = None) -> dict:
    try:
        if name == "groebner":
            return check_groebner(sh, seed)
        if name == "criterion":
            return check_criterion(sh, samples, seed)
        if name == "hilbert":
            return check_hilbert(sh, max_degree)
        if name == "colon":
            return check_colon(sh, budget)
        if name == "radcolon":
            return check_radcolon(sh, budget)
        if name == "primes":
            return check_primes(sh, budget, bound)
        if name == "iso":
            return check_iso(sh, other)
    except (BudgetExceeded, EnumerationBoundExceeded) as exc:
        return {"check": name, "passed": None, "budget_exceeded": str(exc)}
    raise ValueError(f"unknown check {name!r}")


def verify_all(sh: Shape, **kwargs) -> dict:
    results = [run_check(name, sh, **kwargs) for name in CHECKS]
    failed = [r["check"] for r in results if r.get("passed") is False]
    budget = [r["check"] for r in results if "budget_exceeded" in r]
    return {"check": "all", "passed": not failed and not budget, "failed": failed,
            "budget_exceeded": budget, "results": results}
