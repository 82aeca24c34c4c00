"""Command line entry point ``frob``."""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import construction as cons
from .covering import SimplexSpec, inhomogeneous_minimum_2d, kannan_check, mu0_bounds
from .errors import FrobError
from .frobenius import bounds_report, f_ratio, frobenius_number, validate_instance
from .harness import SQRT3, TABLE_COLUMNS, DensityRequest, density_experiment, ratio_table, trend_rows
from .lattice import lattice_from_tuple, parse_lattice
from .mu0 import mu0_search_2d
from .reals import Surd, parse_rational
from .report import emit_report


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _rationals(text: str) -> list[Fraction]:
    return [parse_rational(x) for x in text.split(",") if x.strip()]


def budget_seconds() -> float | None:
    """FROB_BUDGET_MS as seconds; unset or 0 means unlimited."""
    raw = os.environ.get("FROB_BUDGET_MS", "0").strip() or "0"
    ms = int(raw)
    return ms / 1000 if ms > 0 else None


def _fmt(args) -> str:
    return "json" if args.json else "csv" if args.csv else "text"


def cmd_compute(args):
    inst = validate_instance(_ints(args.a))
    res = frobenius_number(inst)
    rec = {"a": inst, "N": inst.N, "g": res.g, "f": res.f,
           "apery": [res.apery[r] for r in sorted(res.apery)] if args.apery else None}
    if inst.N >= 3:
        rec["ratio"] = f_ratio(inst, res).value
    if not args.apery:
        del rec["apery"]
    return [rec], None, None


def cmd_bounds(args):
    inst = validate_instance(_ints(args.a))
    rep = bounds_report(inst)
    rows = [{"a": inst, "g": rep.g, "f": rep.f, "bound": e.name, "kind": e.kind, "value": e.value,
             "applicable": e.applicable, "satisfied": e.satisfied, "note": e.note}
            for e in rep.entries]
    return rows, list(rows[0]), rep.lower_bounds_hold


def cmd_lattice(args):
    inst = validate_instance(_ints(args.a))
    L = lattice_from_tuple(inst)
    return [{"a": inst, "basis": L, "det": L.det_abs}], None, None


def cmd_mu(args):
    S = SimplexSpec(tuple(_rationals(args.simplex)))
    L = parse_lattice(args.lattice)
    b = inhomogeneous_minimum_2d(S, L, parse_rational(args.tol))
    return [{"simplex": list(S.weights), "lattice": L, "mu_interval": [b.lo, b.hi],
             "exact": b.exact, "checks": b.checks}], None, None


def cmd_kannan(args):
    inst = validate_instance(_ints(args.a))
    rep = kannan_check(inst, samples=args.samples, seed=args.seed)
    rec = {"a": inst, "f": rep.f, "mode": rep.mode,
           "mu_interval": list(rep.mu_interval) if rep.mu_interval else None,
           "covered_at_f": rep.covered_at_f, "uncovered_below_f": rep.uncovered_below_f,
           "witness": list(rep.witness) if rep.witness else None,
           "normalized_mu": rep.normalized_mu, "ratio": rep.ratio,
           "chain_consistent": rep.chain_consistent, "inconclusive": rep.inconclusive,
           "pass": rep.passed}
    return [rec], None, None


def cmd_mu0(args):
    if args.n != 3:
        b = mu0_bounds(args.n)
        rec = {"N": args.n, "lower": b.lower, "upper": b.upper, "gamma_upper": b.gamma_upper,
               "lower_over_dim": b.lower_over_dim}
        return [rec], None, None
    r = mu0_search_2d(starts=args.starts, max_iters=args.iters, seed=args.seed,
                      threads=args.threads, budget_s=budget_seconds())
    rec = {"best_mu": Surd(r.best_mu, 1), "best_interval": list(r.best_interval),
           "best_params": list(r.best_params), "best_lattice": r.best_lattice,
           "gamma_estimate": Surd(r.gamma_estimate, 1), "reference": SQRT3,
           "probes": len(r.trace), "exhausted": r.exhausted}
    return [rec], None, None


def _output_record(o: cons.ConstructionOutput) -> dict:
    return {"t": o.t, "t_star": list(o.t_star), "a": list(o.a), "basis_rows": [list(r) for r in o.basis_rows],
            "alpha_t": list(o.alpha_t), "deviations": list(o.deviations),
            "aN_leading_ratio": o.aN_leading_ratio}


def cmd_construct(args):
    L = parse_lattice(args.basis)
    inp = cons.construction_input(L, _rationals(args.alpha))
    if args.tstar:
        stars = [tuple(_ints(args.tstar))]
    else:
        stars = sorted({ts for ts, _ in cons.search_gcd_one(inp, args.tmax, args.tstar_max)})
    outputs, family = [], None
    for ts in stars:
        M = cons.build_parametric_matrix(inp, ts)
        minors = cons.minor_polynomials(M, inp)
        for t in cons.find_gcd_one(minors, args.tmax):
            try:
                outputs.append(cons.construct_tuple(inp, ts, t, minors))
            except (cons.OrderingFailed, cons.ConstructionCheckFailed):
                continue
        if outputs:
            family = (ts, minors)
            break
    rec = {"basis": L, "alpha": list(inp.alpha), "d": inp.d,
           "t_star": list(family[0]) if family else None,
           "minors": [repr(p) for p in family[1].polys] if family else None,
           "ordering_threshold": cons.ordering_threshold(family[1]) if family else None,
           "qualifying_t": [o.t for o in outputs]}
    if len(outputs) >= 3:
        rep = cons.verify_asymptotics(outputs, inp)
        rec["asymptotics"] = {"entry_ok": rep.entry_ok, "alpha_ok": rep.alpha_ok,
                              "alpha_constants": list(rep.alpha_constants),
                              "alpha_fitted": list(rep.alpha_fitted),
                              "aN_ok": rep.aN_ok, "aN_monotone": rep.aN_monotone}
        rec["pass"] = rep.ok
    rec["outputs"] = [_output_record(o) for o in outputs[: args.limit]]
    if args.csv:
        return [_output_record(o) for o in outputs[: args.limit]], \
            ["t", "t_star", "a", "basis_rows", "alpha_t", "deviations", "aN_leading_ratio"], rec.get("pass")
    return [rec], None, None


def cmd_density(args):
    alpha = _rationals(args.alpha)
    req = DensityRequest(len(alpha) + 1, tuple(alpha), parse_rational(args.eps), t_max=args.tmax,
                         tstar_max=args.tstar_max, denom_limit=args.denom_limit,
                         budget_s=budget_seconds())
    lattice = parse_lattice(args.lattice) if args.lattice else None
    r = density_experiment(req, lattice=lattice,
                           search_kw={"starts": args.starts, "seed": args.seed, "threads": args.threads})
    rec = {"a": r.instance, "f": r.f, "ratio": r.ratio, "deviations": list(r.deviations),
           "mu_reference": r.mu_reference, "epsilon": r.epsilon, "t": r.t, "t_star": list(r.t_star),
           "lattice_used": r.lattice_used, "predicted_ratio": r.predicted_ratio,
           "search_best_mu": r.search_best_mu, "candidates": r.tried, "pass": r.verify()}
    return [rec], None, None


def cmd_table(args):
    if args.trend:
        rows = trend_rows(range(3, args.trend + 1))
        return rows, list(rows[0]), None
    tab = ratio_table(args.n, args.amax, seed=args.seed, count=args.count, threads=args.threads)
    rows = [{c: r[c] for c in TABLE_COLUMNS} | {"pass": r["ok"]} for r in tab.rows]
    if args.summary:
        return [{"N": tab.N, "rows": len(tab.rows), "min_ratio": tab.min_ratio, "argmin": tab.argmin,
                 "violations": tab.violations, "pass": tab.passed}], None, None
    return rows, list(TABLE_COLUMNS) + ["pass"], tab.passed


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="JSON output")
    out.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--digits", type=int, default=12, help="decimal places for reals")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", default=None, help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="frob", description="Frobenius numbers and simplex coverings")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compute", parents=[common], help="Frobenius number g and f = g + sum a")
    s.add_argument("--a", required=True, help="comma separated tuple, e.g. 3,5,7")
    s.add_argument("--apery", action="store_true", help="also print the Apery set")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("bounds", parents=[common], help="classical bounds against g and f")
    s.add_argument("--a", required=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("lattice", parents=[common], help="HNF basis of L_a")
    s.add_argument("--a", required=True)
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("mu", parents=[common], help="planar inhomogeneous minimum mu(S, L)")
    s.add_argument("--simplex", required=True, help="simplex weights, e.g. 1,1")
    s.add_argument("--lattice", required=True, help='rows, e.g. "1,0;0,1"')
    s.add_argument("--tol", default="1e-6", help="relative bracket width")
    s.set_defaults(func=cmd_mu)

    s = sub.add_parser("kannan", parents=[common], help="check f = mu(S_a, L_a)")
    s.add_argument("--a", required=True)
    s.add_argument("--samples", type=int, default=10**4, help="sample points for N >= 4")
    s.set_defaults(func=cmd_kannan)

    s = sub.add_parser("mu0", parents=[common], help="search for the best planar lattice")
    s.add_argument("--n", type=int, default=3, help="N; only N = 3 runs a search, others print bounds")
    s.add_argument("--starts", type=int, default=16)
    s.add_argument("--iters", type=int, default=200)
    s.set_defaults(func=cmd_mu0)

    s = sub.add_parser("construct", parents=[common], help="tuples approximating a lattice")
    s.add_argument("--basis", required=True, help='rational basis rows, e.g. "1,0;0,1"')
    s.add_argument("--alpha", required=True, help="ratios, e.g. 1/2,3/4")
    s.add_argument("--tstar", default=None, help="offsets; searched when omitted")
    s.add_argument("--tstar-max", type=int, default=8)
    s.add_argument("--tmax", type=int, default=10**4)
    s.add_argument("--limit", type=int, default=50, help="max outputs to print")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("density", parents=[common], help="tuple with ratios near alpha and small f")
    s.add_argument("--alpha", required=True, help="N-1 ratios in (0, 1), e.g. 2/5,3/5")
    s.add_argument("--eps", default="1/10")
    s.add_argument("--lattice", default=None, help="start lattice instead of running a search")
    s.add_argument("--starts", type=int, default=4)
    s.add_argument("--tmax", type=int, default=10**4)
    s.add_argument("--tstar-max", type=int, default=8)
    s.add_argument("--denom-limit", type=int, default=64)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("table", parents=[common], help="normalized Frobenius ratios over many tuples")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--amax", type=int, default=60)
    s.add_argument("--count", type=int, default=200, help="sample size for N >= 4")
    s.add_argument("--summary", action="store_true", help="only the minimum and violation count")
    s.add_argument("--trend", type=int, default=0, metavar="NMAX",
                   help="print lower/(N-1) for N = 3..NMAX against 1/e instead")
    s.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        records, columns, passed = args.func(args)
    except FrobError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return emit_report(records, _fmt(args), args.out, args.digits, columns, passed)


if __name__ == "__main__":
    sys.exit(main())
