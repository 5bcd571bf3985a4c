"""Command-line front end.

Subcommands:
    verify  problem.tel          check its certificate and/or closed forms
    solve   problem.tel          search for a certificate by ansatz
    check   CASE... | all        run congruence cases, human or JSON-lines output
    seq     ID                   print sequence values as CSV rows, with a cache
    bench   problem.tel          count term evaluations, naive vs reduced

Exit codes: 0 success, 1 verification/solve/bench failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cert, congr, dsl, problems, seq, term

GUARD_BENCH_N = 10 ** 4


def _load_spec(path: str) -> dsl.ProblemSpec:
    text = Path(path).read_text()
    return dsl.parse_problem(text, name=Path(path).stem)


def _parse_params(s: str | None) -> dict:
    """Parse 'b=1,c=-2,x=1/2' into exact values."""
    out = {}
    if not s:
        return out
    for part in s.split(","):
        name, _, val = part.partition("=")
        if not _ or not name:
            raise ValueError(f"bad parameter assignment {part!r}")
        out[name.strip()] = Fraction(val.strip())
    return out


def _point_params(spec: dsl.ProblemSpec, params: dict, n: int) -> dict:
    pt = dict(params)
    for p in spec.params:
        if p == "n" and p not in pt:
            pt[p] = n
        if p not in pt:
            raise ValueError(f"parameter {p} needs a value (use --params)")
    return pt


# -- verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    spec = _load_spec(args.file)
    params = _parse_params(args.params)
    failed = False
    did_anything = False
    if spec.r1 is not None and spec.r2 is not None:
        c = cert.Certificate(spec.r1, spec.r2)
        rep = cert.verify_symbolic(spec.f, c)
        did_anything = True
        print(f"symbolic: {'pass' if rep.symbolic_pass else 'FAIL'} ({rep.details})")
        failed |= not rep.symbolic_pass
    if spec.g1 is not None and spec.g2 is not None:
        kmax = args.kmax
        pt = _point_params(spec, params, kmax + 2)
        rep = cert.verify_numeric(spec.f, cert.ClosedPair(spec.g1, spec.g2), kmax, pt)
        did_anything = True
        print(
            f"numeric:  {'pass' if rep.numeric_pass else 'FAIL'} "
            f"({rep.checked_points} points, {rep.skipped_poles} poles skipped)"
        )
        failed |= not rep.numeric_pass
        if spec.r1 is not None and spec.r2 is not None:
            c = cert.Certificate(spec.r1, spec.r2)
            pair = cert.ClosedPair(spec.g1, spec.g2)
            try:
                ok = cert.check_consistency(spec.f, c, pair, args.samples, pt)
            except cert.SamplingError as exc:
                print(f"consistency: skipped ({exc})")
            else:
                print(f"consistency: {'pass' if ok else 'FAIL'} ({args.samples} samples)")
                failed |= not ok
    if not did_anything:
        print("nothing to verify: file has neither R1/R2 nor G1/G2", file=sys.stderr)
        return 2
    return 1 if failed else 0


# -- solve ----------------------------------------------------------------------


def cmd_solve(args) -> int:
    spec = _load_spec(args.file)
    if args.deg > 6:
        print("ansatz degree capped at 6", file=sys.stderr)
        return 2
    d1 = dsl.parse_polynomial(args.d1, spec.ctx)
    d2 = dsl.parse_polynomial(args.d2, spec.ctx)
    found = cert.find_certificate(spec.f, d1, d2, args.deg)
    if found is None:
        print("NotFound")
        return 1
    print("R1 =", found.r1.render())
    print("R2 =", found.r2.render())
    return 0


# -- check ----------------------------------------------------------------------


def cmd_check(args) -> int:
    ids = args.cases
    if ids == ["all"]:
        ids = sorted(congr.CASES)
    else:
        for cid in ids:
            if cid not in congr.CASES:
                print(f"unknown case id {cid!r}", file=sys.stderr)
                return 2
    reports = []
    if args.jobs > 1 and len(ids) > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futs = {
                cid: pool.submit(congr.run_case, cid, args.profile, args.max_n, args.max_p)
                for cid in ids
            }
            reports = [futs[cid].result() for cid in ids]
    else:
        reports = [
            congr.run_case(cid, args.profile, args.max_n, args.max_p) for cid in ids
        ]
    failed = False
    for rep in reports:
        failed |= not rep.ok
        if args.format == "jsonl":
            for rec in rep.records:
                print(
                    json.dumps(
                        {
                            "case": rec.case,
                            "instance": rec.instance,
                            "status": rec.status,
                            "lhs_mod": rec.lhs_mod,
                            "rhs_mod": rec.rhs_mod,
                            "modulus": rec.modulus,
                        }
                    )
                )
        else:
            state = "ok" if rep.ok else f"{len(rep.failures)} FAILURES"
            print(
                f"{rep.case:12s} {rep.checked:6d} instances  {rep.elapsed:8.2f}s  {state}"
            )
            for rec in rep.failures[:10]:
                print(
                    f"    {rec.instance}: lhs={rec.lhs_mod} rhs={rec.rhs_mod} "
                    f"mod {rec.modulus} [{rec.status}]"
                )
    return 1 if failed else 0


# -- seq ------------------------------------------------------------------------


def _params_key(params: dict) -> str:
    return ";".join(f"{k}={params[k]}" for k in sorted(params))


def _load_cache(path: Path) -> dict:
    cache = {}
    if path.exists():
        with path.open(newline="") as fh:
            for row in csv.reader(fh):
                if len(row) != 4 or row[0] == "sequence":
                    continue
                cache[(row[0], row[1], int(row[2]))] = row[3]
    return cache


def cmd_seq(args) -> int:
    if args.id not in seq.SEQUENCE_IDS:
        print(f"unknown sequence id {args.id!r}", file=sys.stderr)
        return 2
    try:
        params = _parse_params(args.params)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    need = {"trinomial": {"b", "c"}, "apery_poly": {"x"}, "g_poly": {"x"}}.get(
        args.id, set()
    )
    if set(params) != need:
        print(f"sequence {args.id} needs parameters {sorted(need)}", file=sys.stderr)
        return 2
    key = _params_key(params)
    cache_path = Path(args.cache) if args.cache else None
    cache = _load_cache(cache_path) if cache_path else {}
    computed = 0
    writer = csv.writer(sys.stdout)
    writer.writerow(["sequence", "params", "k", "value"])
    for k in range(args.max_k + 1):
        ck = (args.id, key, k)
        if ck in cache:
            value = cache[ck]
        else:
            v = seq.compute(args.id, k, params)
            value = (
                str(v)
                if not isinstance(v, Fraction) or v.denominator == 1
                else f"{v.numerator}/{v.denominator}"
            )
            cache[ck] = value
            computed += 1
        writer.writerow([args.id, key, k, value])
    if cache_path:
        with cache_path.open("w", newline="") as fh:
            w = csv.writer(fh)
            for (sid, pk, k), value in sorted(cache.items()):
                w.writerow([sid, pk, k, value])
    if args.verbose:
        print(f"computed={computed}", file=sys.stderr)
    return 0


# -- bench ----------------------------------------------------------------------


def cmd_bench(args) -> int:
    if args.n > GUARD_BENCH_N:
        print(f"n capped at {GUARD_BENCH_N}", file=sys.stderr)
        return 2
    spec = _load_spec(args.file)
    res_pair = None
    if spec.g1 is not None and spec.g2 is not None:
        res_pair = cert.ClosedPair(spec.g1, spec.g2)
    elif spec.r1 is not None and spec.r2 is not None:
        res_pair = cert.ClosedPair(spec.f.scaled(spec.r1), spec.f.scaled(spec.r2))
    else:
        print("bench needs closed forms or a certificate", file=sys.stderr)
        return 2
    params = _parse_params(args.params)
    n = args.n
    term.reset_eval_count()
    naive_value = cert.naive_sum(spec.f, n, params)
    naive_count = term.eval_count()
    term.reset_eval_count()
    reduced_value = cert.reduce(spec.f, res_pair, n, params)
    reduced_count = term.eval_count()
    print(f"naive:   {naive_count} term evaluations")
    print(f"reduced: {reduced_count} term evaluations (bound 4n = {4 * n})")
    print(f"equal:   {naive_value == reduced_value}")
    if naive_value != reduced_value:
        print(f"naive value   = {naive_value}")
        print(f"reduced value = {reduced_value}")
        return 1
    return 0


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="telesum",
        description="Verify telescoping certificates for double sums, reduce them "
        "to single sums, search for certificates, and sweep congruence claims.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a problem file's certificate data")
    p.add_argument("file")
    p.add_argument("--kmax", type=int, default=30, help="numeric check range")
    p.add_argument("--samples", type=int, default=50, help="consistency sample count")
    p.add_argument("--params", help="parameter values, e.g. b=3,c=1,n=40")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="search for a certificate by bounded ansatz")
    p.add_argument("file")
    p.add_argument("--d1", required=True, help="denominator ansatz for R1")
    p.add_argument("--d2", required=True, help="denominator ansatz for R2")
    p.add_argument("--deg", type=int, default=3, help="numerator total degree bound")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="run congruence cases")
    p.add_argument("cases", nargs="+", help="case ids, or 'all'")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.add_argument("--max-n", type=int, dest="max_n")
    p.add_argument("--max-p", type=int, dest="max_p")
    p.add_argument("--format", choices=("human", "jsonl"), default="human")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("seq", help="print sequence values as CSV")
    p.add_argument("id", help="sequence id, e.g. franel, domb, trinomial")
    p.add_argument("--max-k", type=int, dest="max_k", default=20)
    p.add_argument("--params", help="e.g. b=1,c=1 for trinomial, x=1/2 for g_poly")
    p.add_argument("--cache", help="CSV cache path")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("bench", help="count term evaluations, naive vs reduced")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--params", help="parameter values for the summand")
    p.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rc = args.func(args)
    except dsl.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        rc = 2
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        rc = 2
    except (congr.RangeGuard, KeyError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        rc = 2
    return rc


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
