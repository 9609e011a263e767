"""Command-line front end: ``primesums {eval,bounds,spectrum,scan,verify}``.

Exit codes: 0 success, 1 verification failures, 2 usage or argument errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from primesums import bounds as B
from primesums.characters import character
from primesums.errors import PrimeSumsError
from primesums.expsums import eval_S, reduce_exponent, spectrum
from primesums.prime_field import build_field_context
from primesums.verify import (
    SUITES,
    ScanConfig,
    default_threads,
    fmt_num,
    run_verify,
    scan,
    summary_line,
    thm4_crossover,
    write_report_csv,
    write_report_records,
    write_scan_csv,
    write_scan_records,
)


def _emit(rows: list[dict], fmt: str, out) -> None:
    if not rows:
        return
    keys = list(rows[0])
    if fmt == "records":
        for r in rows:
            out.write(json.dumps(r) + "\n")
    elif fmt == "csv":
        out.write(",".join(keys) + "\n")
        for r in rows:
            out.write(",".join(str(r[k]) for k in keys) + "\n")
    else:
        widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in keys}
        out.write("  ".join(k.ljust(widths[k]) for k in keys).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(str(r[k]).ljust(widths[k]) for k in keys).rstrip() + "\n")


def cmd_eval(args, out) -> int:
    ctx = build_field_context(args.p)
    v = eval_S(ctx, args.k, args.s)
    _emit([{"p": ctx.p, "k": args.k, "s": args.s % ctx.p,
            "re": fmt_num(v.re, 12), "im": fmt_num(v.im, 12),
            "magnitude": fmt_num(v.magnitude, 12)}], args.format, out)
    return 0


def _bound_rows(p: int, k: int) -> list[dict]:
    evals = [B.bound_classical(k, p), B.bound_mvw(k, p), B.bound_hbk(k, p)]
    cands = B.optimal_divisor(p, k).candidates if (p - 1) % k == 0 else []
    evals += [B.bound_thm4(p, k, d, "i") for d, *_ in cands]
    if k % 2 == 0:
        evals.append(B.bound_thm4(p, k, k // 2, "ii"))
    if k % 4 == 0:
        evals.append(B.bound_thm4(p, k, k // 4, "iii"))
    evals.append(B.bound_thm10(p, k))
    rows = []
    for b in evals:
        d = b.params.get("d")
        rows.append({
            "bound": b.name, "d": "" if d is None else d,
            "applicable": "yes" if b.applicable else "no",
            "value": fmt_num(b.value),
        })
    line = B.conjecture_line(p, k, 0.0)
    rows.append({"bound": "conjecture", "d": "", "applicable": "reference",
                 "value": fmt_num(line)})
    return rows


def cmd_bounds(args, out) -> int:
    ctx = build_field_context(args.p)
    k = reduce_exponent(ctx, args.k)
    if k != args.k:
        out.write(f"note: reduced to k={k} (gcd({args.k}, {ctx.p - 1}))\n")
    rows = _bound_rows(ctx.p, k)
    if args.epsilon:
        rows[-1]["value"] = fmt_num(B.conjecture_line(ctx.p, k, args.epsilon))
    _emit(rows, args.format, out)
    return 0


def cmd_spectrum(args, out) -> int:
    ctx = build_field_context(args.p)
    dec = spectrum(ctx, args.d, args.n, args.s)
    rows = [{"e": e, "re": fmt_num(c.re, 12), "im": fmt_num(c.im, 12),
             "magnitude": fmt_num(c.magnitude, 12)} for e, c in enumerate(dec.components)]
    _emit(rows, args.format, out)
    out.write(
        f"recombined {fmt_num(dec.recombined, 12)}  S_{args.d * args.n}({dec.s}) "
        f"{fmt_num(dec.target.value, 12)}  residual {dec.residual:.3g}\n"
    )
    return 0


def _config(args) -> ScanConfig:
    suites = SUITES
    if getattr(args, "suite", None):
        picked = [s for item in args.suite for s in item.split(",")]
        suites = SUITES if "all" in picked else tuple(s for s in SUITES if s in picked)
        unknown = set(picked) - set(SUITES) - {"all"}
        if unknown:
            raise PrimeSumsError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    return ScanConfig(
        p_min=args.p_min, p_max=args.p_max,
        k_mode=args.k if args.k else "all",
        suites=suites, out_path=args.out, epsilon=args.epsilon,
        threads=args.threads if args.threads is not None else default_threads(),
    )


def cmd_scan(args, out) -> int:
    cfg = _config(args)
    out_path, cfg.out_path = cfg.out_path, None
    recs = scan(cfg)
    write = write_scan_records if args.format == "records" else write_scan_csv
    if out_path:
        with open(out_path, "w", newline="") as fh:
            write(recs, fh)
    else:
        write(recs, out)
    bad = [(r.p, r.k, name) for r in recs for name in r.violations()]
    for p, k, name in bad:
        sys.stderr.write(f"violation: p={p} k={k} bound={name}\n")
    cross = thm4_crossover(recs)
    if cross:
        sys.stderr.write("thm4_i first beats classical at: "
                         + ", ".join(f"k={k}: p={p}" for k, p in cross.items()) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    cfg = _config(args)
    results = run_verify(cfg)
    if cfg.out_path:
        with open(cfg.out_path, "w", newline="") as fh:
            (write_report_records if args.format == "records" else write_report_csv)(results, fh)
    notable = [r for r in results if r.status in ("fail", "finding")]
    if args.format == "records":
        write_report_records(notable, out)
    else:
        write_report_csv(notable, out)
    line = summary_line(results)
    out.write(line + "\n")
    return 1 if any(r.status == "fail" for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="primesums", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="table"):
        sp.add_argument("--format", choices=("table", "csv", "records"), default=fmt_default)

    sp = sub.add_parser("eval", help="evaluate S_k(s)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("bounds", help="tabulate every bound for (p, k)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--epsilon", type=float, default=0.0)
    common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("spectrum", help="character spectrum of S_{dn}(s)")
    for flag in ("--p", "--d", "--n", "--s"):
        sp.add_argument(flag, type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_spectrum)

    for name, func, fmt in (("scan", cmd_scan, "csv"), ("verify", cmd_verify, "csv")):
        sp = sub.add_parser(name, help=f"run {name} over a prime range")
        sp.add_argument("--p-min", type=int, default=5)
        sp.add_argument("--p-max", type=int, default=257)
        sp.add_argument("--k", type=int, action="append", help="explicit exponent (repeatable)")
        sp.add_argument("--epsilon", type=float, default=0.0)
        sp.add_argument("--out")
        sp.add_argument("--threads", type=int)
        if name == "verify":
            sp.add_argument("--suite", action="append",
                            help=f"one of {', '.join(SUITES)}, or all (repeatable, comma list)")
        sp.add_argument("--format", choices=("csv", "records"), default=fmt)
        sp.set_defaults(func=func)
    return ap


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (PrimeSumsError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
