"""Command-line front end.

Global options (shape, budgets, output format, seed) come before the
subcommand::

    shankel --r 3,3,3 --s 3 --t 3 hilbert --ideal I --max-degree 8

Exit status is 0 on success, 1 when a verification fails and 2 for usage
errors or exhausted budgets.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__, groebner, switchable
from .groebner import BudgetExceeded
from .hilbert import hilbert_table
from .ideals import gens_I, gens_Itilde, groebner_I, groebner_Itilde
from .indices import Shape, ShapeError
from .iso import HypothesisError, build_psi, iso_hypotheses, verify_iso
from .primes import minimal_primes, verify_minimal_primes
from .switchable import (
    EnumerationBoundExceeded,
    PreconditionError,
    enumerate_switchable,
    maximal_switchable,
)
from .verify import CHECKS, run_check, verify_all


def _int_list(text: str):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shankel", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--r", type=_int_list, default=(2, 2, 2), help="comma list r_1,...,r_n")
    p.add_argument("--s", type=int, default=None, help="default: n")
    p.add_argument("--t", type=int, default=None, help="default: s")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gb-budget", type=_positive, default=None,
                   help="step cap for each Groebner computation")
    p.add_argument("--enum-bound", type=_positive, default=None,
                   help="largest number of classes for exhaustive enumeration")
    p.add_argument("--max-degree", type=_positive, default=6)
    p.add_argument("--timings", action="store_true", help="include elapsed times")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gens", help="generators with provenance")
    g.add_argument("--ideal", choices=["I", "Itilde"], default="I")

    g = sub.add_parser("gb", help="reduced Groebner basis")
    g.add_argument("--ideal", choices=["I", "Itilde"], default="Itilde")

    g = sub.add_parser("hilbert", help="Hilbert function table and polynomial")
    g.add_argument("--ideal", choices=["I", "Itilde"], default="Itilde")
    g.add_argument("--max-degree", dest="hilbert_degree", type=_positive, default=None)
    g.add_argument("--method", choices=["closed", "signatures", "standard", "series"],
                   default=None, help="default: closed for Itilde, series for I")

    g = sub.add_parser("minprimes", help="minimal primes with certificates")
    g.add_argument("--method", choices=["auto", "catalog", "exhaustive"], default="auto")

    g = sub.add_parser("switchable", help="switchable sets")
    mode = g.add_mutually_exclusive_group()
    mode.add_argument("--enumerate", action="store_true", default=True)
    mode.add_argument("--maximal", action="store_true")

    g = sub.add_parser("iso", help="isomorphism with another shape")
    g.add_argument("--other-r", type=_int_list, required=True)
    g.add_argument("--other-s", type=int, default=None)
    g.add_argument("--other-t", type=int, default=None)
    g.add_argument("--gb-images", action="store_true")

    g = sub.add_parser("verify", help="run verification checks")
    g.add_argument("what", choices=CHECKS + ["all"])
    g.add_argument("--samples", type=_positive, default=500)
    g.add_argument("--other-r", type=_int_list, default=None)
    g.add_argument("--other-s", type=int, default=None)
    g.add_argument("--other-t", type=int, default=None)
    return p


def _shape(r, s, t) -> Shape:
    s = len(r) if s is None else s
    t = s if t is None else t
    return Shape(r, s, t)


def _gb_json(G, timings):
    return G.to_json(timings=timings)


def dispatch(args: argparse.Namespace):
    """Run one subcommand; returns ``(status, result)``."""
    sh = _shape(args.r, args.s, args.t)
    cmd = args.command
    if cmd == "gens":
        I = gens_I(sh) if args.ideal == "I" else gens_Itilde(sh)
        return 0, {"count": len(I), **I.to_json()}
    if cmd == "gb":
        G = groebner_I(sh) if args.ideal == "I" else groebner_Itilde(sh)
        return 0, {"ideal": args.ideal, **_gb_json(G, args.timings)}
    if cmd == "hilbert":
        degree = args.hilbert_degree or args.max_degree
        method = args.method or ("series" if args.ideal == "I" else "closed")
        G = None
        if method in ("standard", "series"):
            G = groebner_I(sh) if args.ideal == "I" else groebner_Itilde(sh)
        elif args.ideal == "I":
            raise PreconditionError("closed forms and signatures describe Itilde only")
        return 0, hilbert_table(sh, degree, method, G=G, label=args.ideal).to_json()
    if cmd == "minprimes":
        primes = minimal_primes(sh, method=args.method)
        check = verify_minimal_primes(sh, primes)
        return (0 if check["passed"] else 1), {
            "count": len(primes), "primes": [P.to_json() for P in primes], "verification": check}
    if cmd == "switchable":
        sets = maximal_switchable(sh) if args.maximal else enumerate_switchable(sh)
        return 0, {"mode": "maximal" if args.maximal else "enumerate", "count": len(sets),
                   "sets": [S.to_json() for S in sets]}
    if cmd == "iso":
        other = _shape(args.other_r, args.other_s, args.other_t)
        hyp = iso_hypotheses(sh, other)
        if not all(hyp.values()):
            return 1, {"hypotheses": hyp, "verified": False}
        w = build_psi(sh, other)
        ok = verify_iso(w, args.gb_images)
        return (0 if ok else 1), {"hypotheses": hyp, "verified": ok, "witness": w.to_json()}
    if cmd == "verify":
        other = None
        if args.other_r is not None:
            other = _shape(args.other_r, args.other_s, args.other_t)
        kwargs = dict(seed=args.seed, samples=args.samples, max_degree=args.max_degree,
                      budget=args.gb_budget, bound=args.enum_bound, other=other)
        if args.what == "all":
            rep = verify_all(sh, **kwargs)
            status = 1 if rep["failed"] else (2 if rep["budget_exceeded"] else 0)
        else:
            rep = run_check(args.what, sh, **kwargs)
            status = 2 if "budget_exceeded" in rep else (1 if rep.get("passed") is False else 0)
        return status, rep
    raise ValueError(f"unknown subcommand {cmd!r}")


def render_text(data, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, dict) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v) if not isinstance(v, str) else v}")
    else:
        lines.append(f"{pad}{data}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    if args.gb_budget is not None:
        groebner.DEFAULT_GB_BUDGET = args.gb_budget
    if args.enum_bound is not None:
        switchable.DEFAULT_ENUM_BOUND = args.enum_bound
    report = {"version": __version__, "command": args.command,
              "config": {"gb_budget": groebner.DEFAULT_GB_BUDGET,
                         "enum_bound": switchable.DEFAULT_ENUM_BOUND,
                         "max_degree": args.max_degree, "seed": args.seed},
              "shape": {"r": list(args.r), "s": args.s, "t": args.t}}
    try:
        report["shape"] = _shape(args.r, args.s, args.t).to_json()
        status, result = dispatch(args)
    except (ShapeError, PreconditionError, HypothesisError, ValueError) as exc:
        status, result = 2, {"error": type(exc).__name__, "message": str(exc)}
    except (BudgetExceeded, EnumerationBoundExceeded) as exc:
        status, result = 2, {"error": type(exc).__name__, "message": str(exc)}
    report["status"] = status
    report["result"] = result
    if args.format == "json":
        out = json.dumps(report, indent=2, sort_keys=False)
    else:
        out = render_text(report)
    sys.stdout.write(out + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
