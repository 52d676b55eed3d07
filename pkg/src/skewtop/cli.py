"""Command-line front door.

Subcommands: duality, hc-check, intersect, evolution, airy, verify.
Reports go to stdout as human tables or machine JSON ("--format json");
every JSON report carries the schema tag "skewtop/1", echoes its inputs,
and embeds the convention ledger (which sign/normalization calibrations
are in force) so numbers are reproducible without reading source.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 64 usage error.  The
environment variable SKEWTOP_SEED overrides the seed everywhere.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .rationals import ser_rat

SCHEMA = "skewtop/1"

CONVENTIONS = [
    "entry statistics from the density: var(X_ij) = 1/(4 gamma), "
    "mean(X_ij) = -A_ij/(2 gamma)",
    "pfaffian sign: Pf([[0,a],[-a,0]]) = a",
    "k=1 quadrature calibrated to the Wick oracle: "
    "E_y prod_j (a_j^2 + (y-lambda)^2), y ~ N(0, 1/2)",
    "group-integral pairing: exp(-tr(g Y g^-1 Lambda)), fixed by SO(2)",
    "multi-point replica formula: W = (1/sigma^2) prod 2sh(s_i sigma/4) "
    "+ (1/4) int_0^sigma dy/y prod 2sh(s_i y/4); normalization fixed by "
    "the one-point limit and the two-point factor-4 relation",
    "half-integer-genus one-point stream: single constant 1/4 anchored "
    "at <tau_{2,1}>_{g=3/2} = 1/864",
]

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(args) -> int:
    env = os.environ.get("SKEWTOP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SKEWTOP_SEED must be an integer, got {env!r}")
    return args.seed


def _emit(report: dict, args, exit_code: int) -> int:
    report["schema"] = SCHEMA
    report["conventions"] = CONVENTIONS
    report["timing_s"] = round(time.time() - report.pop("_t0"), 3)
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    if args.format == "json":
        print(text)
    else:
        _print_table(report)
    return exit_code


def _print_table(report: dict, indent: int = 0):
    pad = " " * indent
    for key in sorted(report):
        if key in ("schema", "conventions"):
            continue
        val = report[key]
        if isinstance(val, dict):
            print(f"{pad}{key}:")
            _print_table(val, indent + 2)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            print(f"{pad}{key}:")
            for item in val:
                print(f"{pad}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            print(f"{pad}{key}: {val}")


def _parse_rationals(text: str):
    return [Fraction(tok) for tok in text.split(",") if tok.strip()]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_duality(args) -> int:
    from .duality import verify_duality

    if args.N < 1 or args.k < 1:
        raise UsageError("--N and --k must be positive")
    seed = _seed(args)
    rep = verify_duality(args.N, args.k, trials=args.trials, seed=seed,
                         mode=args.mode, samples=args.samples,
                         workers=args.threads)
    report = {"_t0": args._t0, "command": "duality",
              "config": {"N": args.N, "k": args.k, "mode": args.mode,
                         "trials": args.trials, "samples": args.samples,
                         "seed": seed},
              "results": {"lhs": str(rep.lhs), "rhs": str(rep.rhs),
                          "method": rep.method,
                          "discrepancy": rep.discrepancy,
                          "stderr": rep.stderr},
              "pass": rep.verdict == "pass",
              "verdict": rep.verdict}
    code = {"pass": EXIT_PASS, "fail": EXIT_FAIL,
            "inconclusive": EXIT_INCONCLUSIVE}[rep.verdict]
    return _emit(report, args, code)


def cmd_hc_check(args) -> int:
    from .harish import hc_identity_exact, verify_hc

    if args.N < 1:
        raise UsageError("--N must be positive")
    seed = _seed(args)
    rep = verify_hc(args.N, samples=args.samples, seed=seed,
                    npairs=args.pairs, workers=args.threads)
    identity = hc_identity_exact(min(args.N + 1, 4), seed=seed, trials=4)
    report = {"_t0": args._t0, "command": "hc-check",
              "config": {"N": args.N, "samples": args.samples,
                         "pairs": args.pairs, "seed": seed},
              "results": {"ratios": rep.ratios, "spread": rep.spread,
                          "pairing": rep.pairing,
                          "weyl_det_identity_exact": identity,
                          "pairs": rep.pairs},
              "pass": rep.verdict == "pass" and identity,
              "verdict": rep.verdict}
    code = {"pass": EXIT_PASS, "fail": EXIT_FAIL,
            "inconclusive": EXIT_INCONCLUSIVE}[rep.verdict]
    if not identity:
        code = EXIT_FAIL
    return _emit(report, args, code)


def cmd_intersect(args) -> int:
    from .engine import (extract_intersections, free_energy_power_sums,
                         intersection_table)

    route = args.route
    if route == "auto":
        route = "monomial" if args.order <= 12 else "partition"
    if route == "monomial":
        if args.order > 16:
            raise UsageError("--order is guarded at 16 on the monomial "
                             "route; use --route partition")
        if args.k < 1:
            raise UsageError("--k must be positive")
        if args.k < args.order // 2:
            # power-sum rewriting needs enough variables
            raise UsageError(f"need k >= order/2 (got k={args.k}, "
                             f"order={args.order})")
        table = intersection_table(args.k, args.order)
    else:
        if args.order > 40:
            raise UsageError("--order is guarded at 40")
        table = extract_intersections(
            free_energy_power_sums(args.order,
                                   check_stability=args.order <= 24))
    report = {"_t0": args._t0, "command": "intersect",
              "config": {"k": args.k, "order": args.order, "route": route},
              "results": table.to_dict(),
              "pass": True}
    return _emit(report, args, EXIT_PASS)


def cmd_evolution(args) -> int:
    from . import evolution as ev

    seed = _seed(args)
    results: dict = {"mode": args.mode}
    ok = True
    if args.mode == "finite":
        sources = (_parse_rationals(args.sources) if args.sources
                   else [Fraction(0)] * args.n)
        series = ev.u1_series(sources, args.order)
        results["sources"] = [ser_rat(x) for x in sources]
        results["series"] = [ser_rat(c) for c in series]
    elif args.mode == "replica":
        closed = ev.u_replica_series(args.order)
        formal = ev.u_replica_series_formal(args.order)
        ok = closed == formal
        results["series"] = [ser_rat(c) for c in closed]
        results["formal_path_agrees"] = ok
    elif args.mode == "theorem3":
        ms = ev.theorem3_series(args.n, args.order)
        results["n"] = args.n
        results["series"] = {str(e): ser_rat(c)
                             for e, c in sorted(ms.coeffs.items())}
        if args.n == 1:
            ok = all(ms[(m,)] == c for m, c in
                     enumerate(ev.u_replica_series(args.order)))
            results["matches_one_point_limit"] = ok
        if args.n == 2:
            u2 = ev.u2_contour_series(min(args.order, 12))
            ok = all(ms[e] == 4 * u2[e] for e in u2.coeffs
                     if sum(e) <= min(args.order, 12))
            results["matches_4x_contour"] = ok
    else:
        raise UsageError(f"unknown evolution mode {args.mode!r}")
    report = {"_t0": args._t0, "command": "evolution",
              "config": {"mode": args.mode, "n": args.n, "order": args.order,
                         "seed": seed},
              "results": results, "pass": bool(ok)}
    return _emit(report, args, EXIT_PASS if ok else EXIT_FAIL)


def _parse_genus(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"cannot parse genus {text!r}")


def cmd_airy(args) -> int:
    from .airy import (one_point_half_genus, one_point_integer_genus,
                       one_point_integer_from_stream)

    targets = []
    if args.genus:
        targets.append(_parse_genus(args.genus))
    if args.max_genus:
        top = _parse_genus(args.max_genus)
        g = Fraction(1)
        while g <= top:
            targets.append(g)
            g += Fraction(1, 2)
    if not targets:
        raise UsageError("give --genus or --max-genus")
    rows = []
    ok = True
    for g in targets:
        if g.denominator == 1:
            r = one_point_integer_genus(int(g))
            if g % 3 != 2:
                ok = ok and (one_point_integer_from_stream(int(g)).value
                             == r.value)
        else:
            r = one_point_half_genus(g)
        rows.append({"genus": ser_rat(r.genus), "n": r.n, "j": r.j,
                     "value": ser_rat(r.value), "branch": r.branch,
                     "provenance": r.provenance})
    report = {"_t0": args._t0, "command": "airy",
              "config": {"genus": args.genus, "max_genus": args.max_genus},
              "results": {"one_point": rows, "stream_consistency": ok},
              "pass": ok}
    return _emit(report, args, EXIT_PASS if ok else EXIT_FAIL)


def cmd_verify(args) -> int:
    seed = _seed(args)
    checks = run_verification_battery(seed=seed, samples=args.samples,
                                      workers=args.threads,
                                      tolerance=args.tolerance)
    ok = all(c["pass"] for c in checks)
    report = {"_t0": args._t0, "command": "verify",
              "config": {"seed": seed, "samples": args.samples,
                         "tolerance": args.tolerance},
              "results": {"checks": checks},
              "pass": ok}
    for c in checks:
        status = "ok" if c["pass"] else "FAIL"
        print(f"[{status}] {c['name']}", file=sys.stderr)
    return _emit(report, args, EXIT_PASS if ok else EXIT_FAIL)


def run_verification_battery(seed: int = 42, samples: int = 100_000,
                             workers: int = 1,
                             tolerance: float = 1e-9) -> list:
    """The oracle cross-check battery; each item is {name, pass}."""
    from . import airy, engine, evolution, harish, moments, skew
    from .duality import DualityInstance, k1_quadrature, lhs_exact, verify_duality
    from .oracles import direct_det_expect

    checks = []

    def check(name, fn):
        try:
            result = bool(fn())
        except Exception as exc:      # a crashed check is a failed check
            result = False
            name = f"{name} (error: {exc})"
        checks.append({"name": name, "pass": result})

    F = Fraction
    check("trace moments match closed formulas (dims 2..6, both weights)",
          lambda: all(
              moments.trace_moment_at([2], g, d) == F(-d * (d - 1), 1) / (4 * g)
              and moments.trace_moment_at([4], g, d)
              == F(d * (d - 1) * (2 * d - 1), 16) / (g * g)
              and moments.trace_moment_at([2, 2], g, d)
              == F(d * (d - 1) * (d * d - d + 4), 16) / (g * g)
              for d in range(2, 7) for g in (F(1, 2), F(1))))
    check("pfaffian squared equals determinant (exact and float, dim 6)",
          lambda: _pf_det_exact_check(tolerance))
    check("duality exact on (N,k)=(1,1),(1,2),(2,1),(2,2)",
          lambda: all(verify_duality(n, k, trials=4, seed=seed).verdict == "pass"
                      for n, k in ((1, 1), (1, 2), (2, 1), (2, 2))))
    check("k=1 quadrature equals the Wick oracle",
          lambda: all(k1_quadrature(a, lam)
                      == lhs_exact(DualityInstance(a, [lam]))
                      for a, lam in ([[F(1, 2)], F(2)],
                                     [[F(1), F(2)], F(1, 3)])))
    check("k=1 quadrature agrees with the direct determinant oracle",
          lambda: k1_quadrature([F(1), F(2)], F(1, 2))
          == direct_det_expect(4, [F(1), F(2)], [F(1, 2)]))
    check("partition series reproduces the six published coefficients",
          lambda: engine.to_power_sums(
              engine.log_series(engine.partition_series(4, 8)), 4)
          == {(4,): F(1, 72), (2, 2): F(1, 12), (8,): F(5, 432),
              (4, 4): F(1, 432), (4, 2, 2): F(1, 36),
              (2, 2, 2, 2): F(-1, 108)})
    check("intersection table carries 1/24, 1/6, 1/864",
          lambda: _table_values_check())
    check("one-point operator at dim 2 equals exp(-s^2/4)",
          lambda: evolution.u1_series([0], 8)
          == [F(-1, 4) ** (m // 2) / _fact(m // 2) if m % 2 == 0 else F(0)
              for m in range(9)])
    check("replica series: closed form == formal-size path == moment path",
          lambda: evolution.u_replica_series(8)
          == evolution.u_replica_series_formal(8)
          == moments.replica_one_point(8))
    check("multi-point closed form consistent at n=1 and n=2",
          lambda: _theorem3_check())
    check("Cauchy determinant identity (n = 2, 4)",
          lambda: evolution.cauchy_identity_check([F(1, 2), 3], [F(2, 3), F(5, 4)])
          and evolution.cauchy_identity_check(
              [1, 2, 3, F(9, 2)], [F(1, 3), F(5, 7), F(11, 6), F(13, 5)]))
    check("airy one-point values (1/24, 1/248832, 1/864) and streams",
          lambda: airy.one_point_integer_genus(1).value == F(1, 24)
          and airy.one_point_integer_genus(3).value == F(1, 248832)
          and airy.one_point_half_genus(F(3, 2)).value == F(1, 864)
          and all(airy.one_point_integer_from_stream(g).value
                  == airy.one_point_integer_genus(g).value
                  for g in (1, 3, 4, 6, 7)))
    check("half-genus anchor matches the series-engine coefficient (x10)",
          lambda: airy.one_point_half_genus(F(3, 2)).value * 10 == F(5, 432))
    check("group-integral forms agree exactly (algebraic identity, N<=4)",
          lambda: all(harish.hc_identity_exact(n, seed=seed, trials=3)
                      for n in (2, 3, 4)))
    check("SO(2) pairing calibration exact",
          lambda: harish.verify_hc(1, seed=seed).verdict == "pass")
    return checks


def _fact(n):
    import math
    return math.factorial(n)


def _pf_det_exact_check(tolerance: float = 1e-9) -> bool:
    import random

    from .skew import SkewMatrix, det_exact, pfaffian

    rng = random.Random(9)
    d = 6
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            rows[i][j] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            rows[j][i] = -rows[i][j]
    sk = SkewMatrix(rows)
    if pfaffian(sk) ** 2 != det_exact(sk.rows):
        return False
    det = float(det_exact(sk.rows))
    pf_float = pfaffian(sk.to_numpy())
    return abs(pf_float ** 2 - det) <= tolerance * max(1.0, abs(det))


def _table_values_check() -> bool:
    from .engine import intersection_table

    tab = intersection_table(4, 8)
    e1 = tab.lookup([(1, 0, 1)])
    e2 = tab.lookup([(0, 1, 2)])
    e3 = tab.lookup([(2, 1, 1)])
    e4 = tab.lookup([(1, 0, 2)])
    return (e1 is not None and e1.value == Fraction(1, 24)
            and e2 is not None and e2.value == Fraction(1, 6)
            and e3 is not None and e3.value == Fraction(1, 864)
            and e4 is not None and e4.value == Fraction(1, 24)
            and e4.genus == 1 and e4.note is not None)


def _theorem3_check() -> bool:
    from . import evolution as ev

    t1 = ev.theorem3_series(1, 8)
    if any(t1[(m,)] != c for m, c in enumerate(ev.u_replica_series(8))):
        return False
    t2 = ev.theorem3_series(2, 8)
    u2 = ev.u2_contour_series(8)
    return t2 == u2.scale(4).even_projection().truncate(8)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> Parser:
    p = Parser(prog="skewtop",
               description="exact and Monte Carlo verifications for the "
                           "antisymmetric Gaussian matrix model")
    sub = p.add_subparsers(dest="command", required=True)

    def count(text):
        """Sample counts accept scientific notation: --samples 1e6."""
        return int(float(text))

    def common(sp):
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--format", choices=("table", "json"), default="table")
        sp.add_argument("--output", default=None, help="also write JSON here")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker-stream count for MC paths")
        sp.add_argument("--tolerance", type=float, default=1e-9,
                        help="relative tolerance for floating comparisons")

    d = sub.add_parser("duality", help="characteristic-polynomial duality")
    d.add_argument("--N", type=int, default=1)
    d.add_argument("--k", type=int, default=1)
    d.add_argument("--mode", choices=("exact", "mc"), default="exact")
    d.add_argument("--trials", type=int, default=20)
    d.add_argument("--samples", type=count, default=100_000)
    common(d)
    d.set_defaults(func=cmd_duality)

    h = sub.add_parser("hc-check", help="group-integral closed form vs MC")
    h.add_argument("--N", type=int, default=2)
    h.add_argument("--samples", type=count, default=100_000)
    h.add_argument("--pairs", type=int, default=5)
    common(h)
    h.set_defaults(func=cmd_hc_check)

    i = sub.add_parser("intersect", help="intersection-number table")
    i.add_argument("--k", type=int, default=4)
    i.add_argument("--order", type=int, default=8)
    i.add_argument("--route", choices=("auto", "monomial", "partition"),
                   default="auto",
                   help="monomial expansion (needs k >= order/2) or the "
                        "partition-space route (reaches order 40)")
    common(i)
    i.set_defaults(func=cmd_intersect)

    e = sub.add_parser("evolution", help="evolution-operator series")
    e.add_argument("--n", type=int, default=1)
    e.add_argument("--order", type=int, default=8)
    e.add_argument("--mode", choices=("finite", "replica", "theorem3"),
                   default="replica")
    e.add_argument("--sources", default=None,
                   help="comma-separated rational block values (finite mode)")
    common(e)
    e.set_defaults(func=cmd_evolution)

    a = sub.add_parser("airy", help="one-point intersection numbers")
    a.add_argument("--genus", default=None)
    a.add_argument("--max-genus", dest="max_genus", default=None)
    common(a)
    a.set_defaults(func=cmd_airy)

    v = sub.add_parser("verify", help="full oracle cross-check battery")
    v.add_argument("--samples", type=count, default=100_000)
    common(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args._t0 = time.time()
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
