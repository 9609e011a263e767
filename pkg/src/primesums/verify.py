"""Brute-force verification suites, sharpness scans and report emission."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from primesums import bounds as B
from primesums.characters import (
    character,
    incomplete_sum_closed_form,
    incomplete_sum_direct,
)
from primesums.errors import ConfigError, OrderDoesNotDivide
from primesums.expsums import S_values, T_values, argmax_smallest, batch_S_all_s
from primesums.prime_field import (
    DEFAULT_MAX_P,
    FieldContext,
    build_field_context,
    divisors,
    primes_in_range,
)

SUITES = ("moments", "spectrum", "lemma7", "cosets", "bounds")

SCAN_COLUMNS = (
    "p", "k", "best_d", "n", "max_abs", "argmax_s", "classical", "mvw", "hbk",
    "thm4_i", "thm4_ii", "thm4_iii", "thm10", "sqrt_kp", "ratio_max_over_sqrt_kp",
    "tightest_bound",
)
SCAN_BOUNDS = ("classical", "mvw", "hbk", "thm4_i", "thm4_ii", "thm4_iii", "thm10")

REPORT_COLUMNS = (
    "check_id", "p", "k", "d", "n", "e", "s", "j", "status",
    "observed", "expected", "tolerance", "note",
)

SUM_TOL = 1e-6
MOMENT_RTOL = 1e-8
THREADS_ENV = "PRIMESUMS_THREADS"


@dataclass(frozen=True, slots=True)
class CheckResult:
    """One comparison. ``kind`` is ``eq`` (|obs - exp| <= tol), ``le`` (obs <= exp + tol) or ``info``.

    A failed check with ``finding=True`` records a disagreement with a
    printed claim that the brute-force data contradicts; it does not count
    as a failure.
    """

    check_id: str
    params: dict
    kind: str
    observed: float | complex
    expected: float | complex
    tolerance: float
    finding: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        if self.kind == "eq":
            return abs(self.observed - self.expected) <= self.tolerance
        if self.kind == "le":
            return self.observed <= self.expected + self.tolerance
        return True

    @property
    def status(self) -> str:
        if self.kind == "info":
            return "info"
        if self.passed:
            return "pass"
        return "finding" if self.finding else "fail"


@dataclass
class ScanConfig:
    p_min: int = 5
    p_max: int = 257
    k_mode: str | list[int] = "all"
    suites: tuple[str, ...] = SUITES
    out_path: str | None = None
    epsilon: float = 0.0
    threads: int = 1
    max_p: int = DEFAULT_MAX_P
    cross_check_limit: int = 300

    def validate(self) -> None:
        if self.p_min < 5 or self.p_min > self.p_max:
            raise ConfigError(f"bad prime range [{self.p_min}, {self.p_max}]")
        if self.p_max > self.max_p:
            raise ConfigError(f"p_max {self.p_max} exceeds cap {self.max_p}")
        if self.epsilon < 0:
            raise ConfigError("epsilon must be >= 0")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        bad = set(self.suites) - set(SUITES)
        if bad:
            raise ConfigError(f"unknown suites {sorted(bad)}")
        if not self.primes():
            raise ConfigError(f"no primes in [{self.p_min}, {self.p_max}]")

    def primes(self) -> list[int]:
        return primes_in_range(self.p_min, self.p_max)

    def exponents(self, p: int, include_one: bool = True) -> list[int]:
        if self.k_mode == "all":
            ks = divisors(p - 1)
        else:
            ks = sorted({math.gcd(k, p - 1) for k in self.k_mode})
        return [k for k in ks if include_one or k > 1]


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class ScanRecord:
    p: int
    k: int
    best_d: int | None
    n: int | None
    max_magnitude: float
    argmax_s: int
    bounds: dict[str, float | None] = field(default_factory=dict)
    sqrt_kp: float = 0.0

    @property
    def rms_ratio(self) -> float:
        return self.max_magnitude / self.sqrt_kp

    @property
    def tightest_bound(self) -> str:
        live = [(v, name) for name, v in self.bounds.items() if v is not None]
        return min(live)[1] if live else ""

    def violations(self) -> list[str]:
        slack = SUM_TOL * math.sqrt(self.p)
        return [name for name, v in self.bounds.items()
                if v is not None and self.max_magnitude > v + slack]


def _coprime_splits(k: int):
    for d in divisors(k):
        if math.gcd(d, k // d) == 1:
            yield d, k // d


def _sum_sq(values: np.ndarray) -> float:
    return math.fsum((values.real ** 2 + values.imag ** 2).tolist())


def suite_moments(ctx: FieldContext, k: int) -> list[CheckResult]:
    p = ctx.p
    if (p - 1) % k:
        raise OrderDoesNotDivide(f"k={k} does not divide p-1={p - 1}")
    out = []
    m = _sum_sq(S_values(ctx, k))
    exact = p * (1 + k * (p - 1))
    printed = k * p * (p - 1)
    prm = {"p": p, "k": k}
    out.append(CheckResult("moment.S", prm, "eq", m, exact, MOMENT_RTOL * exact))
    out.append(CheckResult(
        "moment.S.printed", prm, "eq", m, printed, MOMENT_RTOL * exact, finding=True,
        note=f"printed k*p*(p-1)={printed}; exact count p*(1+k*(p-1))={exact}",
    ))
    out.append(CheckResult(
        "moment.S.deviation", prm, "eq", m - printed, p, MOMENT_RTOL * exact,
        note="observed minus printed value; the x=y=0 solution contributes p",
    ))
    for d, n in ((d, k // d) for d in divisors(k)):
        if n < 2:
            continue
        target = d * p * (p - 1)
        for e in range(1, n):
            mt = _sum_sq(T_values(ctx, d, character(ctx, n, e)))
            out.append(CheckResult(
                "moment.T", {"p": p, "k": k, "d": d, "n": n, "e": e}, "eq",
                mt, target, MOMENT_RTOL * target,
            ))
    return out


def suite_spectrum(ctx: FieldContext) -> list[CheckResult]:
    p = ctx.p
    out = []
    for k in ctx.divisors:
        S = S_values(ctx, k)
        for d in divisors(k):
            n = k // d
            if n < 2:
                continue
            total = np.zeros(p, dtype=np.complex128)
            for e in range(n):
                total += T_values(ctx, d, character(ctx, n, e))
            for s in range(p):
                out.append(CheckResult(
                    "spectrum.identity", {"p": p, "k": k, "d": d, "n": n, "s": s},
                    "eq", complex(total[s]), complex(S[s]), SUM_TOL,
                ))
    return out


def suite_lemma7(ctx: FieldContext) -> list[CheckResult]:
    p = ctx.p
    out = []
    for k in ctx.divisors:
        for d, n in _coprime_splits(k):
            if n < 2:
                continue
            for e in range(1, n):
                chi = character(ctx, n, e)
                direct = incomplete_sum_direct(ctx, d, chi)
                closed = incomplete_sum_closed_form(ctx, d, chi)
                prm = {"p": p, "k": k, "d": d, "n": n, "e": e}
                out.append(CheckResult("incomplete.bound", prm, "le", abs(direct), d * n, SUM_TOL))
                out.append(CheckResult(
                    "incomplete.closed_form", prm, "eq", closed, direct, SUM_TOL, finding=True,
                    note="closed form d*sum_{s<=b} conj(chi^e)(g^s) vs enumeration",
                ))
                if n == 2 and d % 2 == 1:
                    out.append(CheckResult("incomplete.quadratic", prm, "eq", abs(direct), d, SUM_TOL))
                if n == 4 and math.gcd(d, 4) == 1:
                    out.append(CheckResult(
                        "incomplete.quartic", prm, "le", abs(direct), math.sqrt(2) * d, SUM_TOL,
                    ))
    return out


def suite_cosets(ctx: FieldContext) -> list[CheckResult]:
    p = ctx.p
    rp = math.sqrt(p)
    out = []
    cls_nonzero = ctx.index_table[1:]
    for d in ctx.divisors:
        labels = cls_nonzero % d
        for n in ctx.divisors:
            if n < 2:
                continue
            thm9 = []
            if (p - 1) % (d * n) == 0:
                thm9 = [b for b in (B.bound_thm9(p, d, n, c) for c in (1, 2, 3)) if b.applicable]
            if d == 1:
                constancy = {e for e in range(1, n) if math.gcd(e, n) == 1}
            else:
                constancy = {1}
            es = range(1, n) if thm9 else sorted(constancy)
            for e in es:
                T = T_values(ctx, d, character(ctx, n, e), np.arange(1, p))
                mags = np.abs(T)
                prm = {"p": p, "d": d, "n": n, "e": e}
                if e in constancy:
                    for j in range(d):
                        cls = mags[labels == j]
                        out.append(CheckResult(
                            "coset.constancy", {**prm, "j": j}, "eq",
                            float(cls.max() - cls.min()), 0.0, SUM_TOL,
                        ))
                    if d == 1:
                        out.append(CheckResult(
                            "gauss.magnitude", prm, "eq",
                            float(mags[np.argmax(np.abs(mags - rp))]), rp, SUM_TOL,
                            note="entry of |T_1| farthest from sqrt(p)",
                        ))
                if thm9:
                    sq = mags ** 2
                    i = argmax_smallest(sq)
                    for b in thm9:
                        out.append(CheckResult(
                            f"bound.{b.name}", {**prm, "s": i + 1}, "le",
                            float(sq[i]), b.value, SUM_TOL * p,
                        ))
    return out


def _reduction_partner(p: int, k: int) -> int:
    cof = (p - 1) // k
    m = 2
    while math.gcd(m, cof) != 1:
        m += 1
    return k * m


def suite_bounds(ctx: FieldContext, k: int, values: np.ndarray | None = None,
                 epsilon: float = 0.0, cross_check_limit: int = 300) -> list[CheckResult]:
    p = ctx.p
    if (p - 1) % k:
        raise OrderDoesNotDivide(f"k={k} does not divide p-1={p - 1}")
    rp = math.sqrt(p)
    if values is None:
        values = batch_S_all_s(ctx, k)
    mags = np.abs(values[1:])
    i = argmax_smallest(mags)
    top, arg = float(mags[i]), i + 1
    prm = {"p": p, "k": k, "s": arg}
    slack = SUM_TOL * rp
    out = []

    evals = [B.bound_classical(k, p), B.bound_mvw(k, p), B.bound_hbk(k, p)]
    evals += [B.bound_thm4(p, k, d, "i") for d, _ in _coprime_splits(k)]
    if k % 2 == 0:
        evals.append(B.bound_thm4(p, k, k // 2, "ii"))
    if k % 4 == 0:
        evals.append(B.bound_thm4(p, k, k // 4, "iii"))
    evals.append(B.bound_thm10(p, k))
    for b in evals:
        if not b.applicable:
            continue
        bp = dict(prm)
        if "d" in b.params and b.params["d"] is not None:
            bp["d"], bp["n"] = b.params["d"], k // b.params["d"]
        out.append(CheckResult(f"bound.{b.name}", bp, "le", top, b.value, slack))

    if k == 2:
        out.append(CheckResult(
            "bound.classical.tight", prm, "eq", top, B.bound_classical(k, p).value, SUM_TOL,
        ))
    if k % 2 == 1:
        im = np.abs(values.imag)
        j = int(np.argmax(im))
        out.append(CheckResult("real.odd_k", {"p": p, "k": k, "s": j}, "eq", float(im[j]), 0.0, SUM_TOL))

    k2 = _reduction_partner(p, k)
    diff = float(np.abs(batch_S_all_s(ctx, k2) - values).max())
    out.append(CheckResult(
        "reduce.gcd", {"p": p, "k": k}, "eq", diff, 0.0, 1e-9 * p,
        note=f"S_{k2} vs S_{k}; gcd({k2},{p - 1})={k}",
    ))
    if p <= cross_check_limit:
        direct = S_values(ctx, k)
        out.append(CheckResult(
            "sum.batch_consistency", {"p": p, "k": k}, "eq",
            float(np.abs(direct - values).max()), 0.0, SUM_TOL,
            note="chirp-z batch vs compensated direct sums",
        ))
    if k >= 18:
        x0, _ = B.minimize_fk(k)
        grad = 1 - k / (2 * x0 ** 1.5) - 1 / (2 * math.sqrt(x0))
        out.append(CheckResult("fk.stationary", {"p": p, "k": k}, "eq", grad, 0.0, SUM_TOL,
                               note=f"x0={x0:.12g}"))
    line = B.conjecture_line(p, k, epsilon)
    out.append(CheckResult(
        "conjecture.line", prm, "info", top, line, 0.0,
        note=f"epsilon={epsilon:g}; ratio={top / line:.7g}",
    ))
    return out


def verify_prime(p: int, config: ScanConfig) -> list[CheckResult]:
    ctx = build_field_context(p, config.max_p)
    out: list[CheckResult] = []
    for name in SUITES:
        if name not in config.suites:
            continue
        if name == "moments":
            for k in config.exponents(p):
                out += suite_moments(ctx, k)
        elif name == "spectrum":
            out += suite_spectrum(ctx)
        elif name == "lemma7":
            out += suite_lemma7(ctx)
        elif name == "cosets":
            out += suite_cosets(ctx)
        elif name == "bounds":
            for k in config.exponents(p):
                out += suite_bounds(ctx, k, epsilon=config.epsilon,
                                    cross_check_limit=config.cross_check_limit)
    return out


def parallel_map(fn, items, threads: int) -> list:
    """Order-preserving map; output order never depends on ``threads``."""
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def run_verify(config: ScanConfig) -> list[CheckResult]:
    config.validate()
    chunks = parallel_map(lambda p: verify_prime(p, config), config.primes(), config.threads)
    return [c for chunk in chunks for c in chunk]


def summarize(results: list[CheckResult]) -> tuple[int, int, int]:
    fails = sum(r.status == "fail" for r in results)
    finds = sum(r.status == "finding" for r in results)
    return len(results), fails, finds


def summary_line(results: list[CheckResult]) -> str:
    n, f, g = summarize(results)
    return f"{n} checks, {f} failures, {g} findings"


def scan_pair(ctx: FieldContext, k: int) -> ScanRecord:
    p = ctx.p
    top, arg = max_abs_from(batch_S_all_s(ctx, k))
    evals = B.bounds_for(p, k)
    best = evals["thm4_i"].params["d"] if "thm4_i" in evals else None
    row = {}
    for name in SCAN_BOUNDS:
        b = evals.get(name)
        row[name] = b.value if b is not None and b.applicable else None
    return ScanRecord(p, k, best, (k // best) if best else None, top, arg, row,
                      math.sqrt(k * p))


def max_abs_from(values: np.ndarray) -> tuple[float, int]:
    mags = np.abs(values[1:])
    i = argmax_smallest(mags)
    return float(mags[i]), i + 1


def scan(config: ScanConfig) -> list[ScanRecord]:
    config.validate()

    def one(p):
        ctx = build_field_context(p, config.max_p)
        return [scan_pair(ctx, k) for k in config.exponents(p, include_one=False)]

    recs = [r for chunk in parallel_map(one, config.primes(), config.threads) for r in chunk]
    if config.out_path:
        with open(config.out_path, "w", newline="") as fh:
            write_scan_csv(recs, fh)
    return recs


def thm4_crossover(records: list[ScanRecord]) -> dict[int, int]:
    """Smallest p in the scan, per k, where thm4_i (optimal d) beats the classical bound."""
    first: dict[int, int] = {}
    for r in records:
        t4, cl = r.bounds.get("thm4_i"), r.bounds.get("classical")
        if t4 is not None and cl is not None and t4 < cl and r.k not in first:
            first[r.k] = r.p
    return dict(sorted(first.items()))


def fmt_num(x, digits: int = 7) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, complex):
        return f"{x.real:#.{digits}g}{x.imag:+#.{digits}g}j"
    return f"{float(x):#.{digits}g}"


def scan_row(r: ScanRecord) -> dict[str, str]:
    row = {
        "p": str(r.p), "k": str(r.k), "best_d": fmt_num(r.best_d), "n": fmt_num(r.n),
        "max_abs": fmt_num(r.max_magnitude), "argmax_s": str(r.argmax_s),
    }
    for name in SCAN_BOUNDS:
        row[name] = fmt_num(r.bounds.get(name))
    row["sqrt_kp"] = fmt_num(r.sqrt_kp)
    row["ratio_max_over_sqrt_kp"] = fmt_num(r.rms_ratio)
    row["tightest_bound"] = r.tightest_bound
    return row


def write_scan_csv(records: list[ScanRecord], fh) -> None:
    w = csv.DictWriter(fh, fieldnames=SCAN_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(scan_row(r))


def write_scan_records(records: list[ScanRecord], fh) -> None:
    for r in records:
        fh.write(json.dumps(scan_row(r), sort_keys=False) + "\n")


def report_row(r: CheckResult) -> dict[str, str]:
    row = {c: "" for c in REPORT_COLUMNS}
    row["check_id"] = r.check_id
    for key in ("p", "k", "d", "n", "e", "s", "j"):
        if key in r.params:
            row[key] = str(r.params[key])
    row["status"] = r.status
    row["observed"] = fmt_num(r.observed, 12)
    row["expected"] = fmt_num(r.expected, 12)
    row["tolerance"] = fmt_num(r.tolerance, 3)
    row["note"] = r.note
    return row


def write_report_csv(results: list[CheckResult], fh) -> None:
    w = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in results:
        w.writerow(report_row(r))


def write_report_records(results: list[CheckResult], fh) -> None:
    for r in results:
        fh.write(json.dumps(report_row(r)) + "\n")


def report_text(results: list[CheckResult], fmt: str = "csv") -> str:
    buf = io.StringIO()
    (write_report_records if fmt == "records" else write_report_csv)(results, buf)
    return buf.getvalue()
