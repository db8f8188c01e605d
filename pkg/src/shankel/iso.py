"""Isomorphisms between generalized-minor ideals of different shapes.

The map sends the variable with s-norm ``k`` and tail ``T`` to the target
variable with s'-norm ``k - s + s'`` and the same tail.  It extends to a ring
isomorphism carrying one generalized-minor ideal onto the other whenever the
shapes satisfy :func:`check_iso_hypotheses`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .groebner import buchberger, Ideal
from .hilbert import hilbert_table
from .ideals import flattening, gens_Itilde, groebner_I, groebner_Itilde
from .indices import Index, Shape, enumerate_variables
from .membership import binomial_in_Itilde
from .polyring import Polynomial, ring_of
from .switchable import PreconditionError


class HypothesisError(ValueError):
    pass


def iso_hypotheses(sh: Shape, sh2: Shape) -> Dict[str, bool]:
    """Each condition separately, keyed by a short name."""
    s, t, n, r = sh.s, sh.t, sh.n, sh.r
    s2, t2, n2, r2 = sh2.s, sh2.t, sh2.n, sh2.r
    # t = n defines the same ideal as t = n - 1
    t = min(t, n - 1) if n > 1 else t
    t2 = min(t2, n2 - 1) if n2 > 1 else t2
    out = {
        "codim": n - s == n2 - s2,
        "head_sum": sum(r[:s]) - s == sum(r2[:s2]) - s2,
        "tails": n - s == n2 - s2 and r[s:] == r2[s2:],
        "t_condition": (s < t and t - s == t2 - s2) or (t <= s and t2 <= s2),
        "s_one": (s == 1) == (s2 == 1),
    }
    return out


def check_iso_hypotheses(sh: Shape, sh2: Shape) -> bool:
    return all(iso_hypotheses(sh, sh2).values())


@dataclass
class IsoWitness:
    source: Shape
    target: Shape
    mapping: Dict[Index, Index]
    forward: Optional[bool] = None
    backward: Optional[bool] = None
    gb_images: Optional[bool] = None
    details: dict = field(default_factory=dict)

    @property
    def inverse(self) -> Dict[Index, Index]:
        return {v: k for k, v in self.mapping.items()}

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "mapping": [[list(k), list(v)] for k, v in sorted(self.mapping.items(), reverse=True)],
            "forward": self.forward,
            "backward": self.backward,
            "gb_images": self.gb_images,
        }


def build_psi(sh: Shape, sh2: Shape) -> IsoWitness:
    hyp = iso_hypotheses(sh, sh2)
    if not all(hyp.values()):
        failed = [k for k, v in hyp.items() if not v]
        raise HypothesisError(f"hypotheses fail: {', '.join(failed)}")
    shift = sh2.s - sh.s
    target = {(sum(v[: sh2.s]), v[sh2.s:]): v for v in enumerate_variables(sh2)}
    mapping = {}
    for v in enumerate_variables(sh):
        mapping[v] = target[(sum(v[: sh.s]) + shift, v[sh.s:])]
    if len(set(mapping.values())) != len(target):
        raise AssertionError("variable map is not a bijection")
    return IsoWitness(sh, sh2, mapping)


def map_polynomial(p: Polynomial, mapping: Dict[Index, Index], target: Shape) -> Polynomial:
    R2 = ring_of(target)
    src = p.ring
    terms = {}
    for m, c in p.terms:
        powers = {mapping[src.variables[i]]: k for i, k in enumerate(m) if k}
        terms[R2.monomial(powers)] = c
    return Polynomial(R2, terms)


def verify_iso(w: IsoWitness, gb_images: bool = False) -> bool:
    """Generator-wise double inclusion of the two ideals under the variable map."""
    fwd = [map_polynomial(g, w.mapping, w.target) for g in gens_Itilde(w.source).generators]
    bwd = [map_polynomial(g, w.inverse, w.source) for g in gens_Itilde(w.target).generators]
    w.forward = all(binomial_in_Itilde(g) for g in fwd)
    w.backward = all(binomial_in_Itilde(g) for g in bwd)
    ok = w.forward and w.backward
    if gb_images:
        images = [map_polynomial(g, w.mapping, w.target) for g in groebner_Itilde(w.source).elements]
        w.gb_images = buchberger(Ideal(ring_of(w.target), images)) == groebner_Itilde(w.target)
        ok = ok and w.gb_images
    return ok


def curve_params(sh: Shape) -> Tuple[int, Shape]:
    """``m`` and the 2 x m Hankel shape whose ideal is isomorphic (``s = n``)."""
    if sh.s != sh.n:
        raise PreconditionError("needs s = n")
    if sh.n < 2:
        raise PreconditionError("needs n >= 2")
    m = sum(sh.r) - sh.n
    return m, Shape((2, m), 2, 2)


def scroll_params(sh: Shape) -> Tuple[int, int]:
    """``(sigma, l)`` for ``s = n - 1 >= 2``."""
    if sh.n < 3 or sh.s != sh.n - 1:
        raise PreconditionError("needs s = n - 1 and n >= 3")
    return sum(sh.r[:-1]) - sh.n + 1, sh.r[-1]


def scroll_report(sh: Shape) -> dict:
    """Reduce to the three-component shape ``(2, sigma, l)`` and check the flattening."""
    sigma, l = scroll_params(sh)
    out = {"sigma": sigma, "l": l}
    # s = n - 1 forces t <= s up to the t = n reduction, so t' = 1 is allowed
    target = Shape((2, sigma, l), 2, 1)
    if sh != target:
        w = build_psi(sh, target)
        out["reduction"] = w.to_json()
        out["reduction_verified"] = verify_iso(w)
    flat = flattening(target, 1)
    GF = flat.minors_ideal().groebner()
    out["flattening"] = {"rows": flat.rows, "cols": flat.cols}
    out["flattening_equals_itilde"] = GF == groebner_Itilde(target)
    out["passed"] = out["flattening_equals_itilde"] and out.get("reduction_verified", True)
    return out


def compare_on_I(sh: Shape, sh2: Shape, max_degree: int = 12) -> dict:
    """Hilbert polynomials of the slice-minor quotients of two shapes."""
    t1 = hilbert_table(sh, max_degree, "series", G=groebner_I(sh), label="I")
    t2 = hilbert_table(sh2, max_degree, "series", G=groebner_I(sh2), label="I")
    return {
        "hypotheses": check_iso_hypotheses(sh, sh2),
        "source_polynomial": str(t1.polynomial),
        "target_polynomial": str(t2.polynomial),
        "isomorphic_possible": t1.values == t2.values,
    }
