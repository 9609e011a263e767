"""Closed-form upper bounds on |S_k(s)| and |T_d(chi^e, s)|^2 with applicability checks.

Each bound returns a :class:`BoundEvaluation`; an unmet precondition makes
the bound inapplicable rather than raising.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import minimize_scalar

from primesums.errors import DomainError
from primesums.prime_field import divisors, is_prime_power

BOUND_NAMES = (
    "classical", "mvw", "hbk", "thm4_i", "thm4_ii", "thm4_iii",
    "thm9_1", "thm9_2", "thm9_3", "thm10", "conjecture",
)


@dataclass(frozen=True)
class BoundEvaluation:
    name: str
    preconditions: dict[str, bool]
    value: float
    params: dict = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return all(self.preconditions.values())


@dataclass(frozen=True)
class DivisorSearchResult:
    k: int
    candidates: list[tuple[int, int, int, float]]
    best_d: int | None
    x0_bracket: tuple[float, float]


@dataclass(frozen=True)
class RatioComparison:
    exact: float
    approximation: float

    @property
    def difference(self) -> float:
        return self.approximation - self.exact


def bound_classical(k: int, p: int) -> BoundEvaluation:
    return BoundEvaluation(
        "classical", {}, (k - 1) * math.sqrt(p),
        {"p": p, "k": k, "nontrivial": k < math.sqrt(p) + 1},
    )


def bound_mvw(k: int, p: int) -> BoundEvaluation:
    # p = k m + 1 with m odd; equivalent to k | p-1 and 2k does not divide p-1
    even = k % 2 == 0
    divides = (p - 1) % k == 0
    pre = {
        "k_even": even,
        "p_1_mod_k": divides,
        "cofactor_odd": divides and ((p - 1) // k) % 2 == 1,
    }
    value = math.sqrt((k * k - 2 * k + 2) / 2) * math.sqrt(p)
    return BoundEvaluation("mvw", pre, value, {"p": p, "k": k})


def bound_hbk(k: int, p: int) -> BoundEvaluation:
    """Minimum over the branches of the piecewise bound whose closed k-range contains k."""
    c1, c2, c3 = p ** (1 / 3), p ** 0.5, p ** (2 / 3)
    branches = [
        (1, c1, k * math.sqrt(p)),
        (c1, c2, k ** 0.625 * p ** 0.625),
        (c2, c3, k ** 0.375 * p ** 0.75),
        (c3, p, float(p)),
    ]
    vals = [v for lo, hi, v in branches if lo <= k <= hi]
    value = min(vals) if vals else float(p)
    return BoundEvaluation("hbk", {}, value, {"p": p, "k": k})


def coefficient_cd(d: int, n: int, p: int) -> float:
    k = d * n
    return d - 1 + (n - 1) * math.sqrt(d * (1 + k / math.sqrt(p)))


def bound_thm4(p: int, k: int, d: int, case: str = "i") -> BoundEvaluation:
    splits = d >= 1 and k % d == 0
    n = k // d if splits else 0
    rp = math.sqrt(p)
    pre = {"k_divides_p_1": (p - 1) % k == 0, "d_divides_k": splits}
    if case == "i":
        pre["coprime_split"] = splits and math.gcd(d, n) == 1
        value = coefficient_cd(d, n, p) * rp if splits else math.inf
    elif case == "ii":
        pre["n_is_2"] = n == 2
        pre["d_odd"] = d % 2 == 1
        value = (d - 1 + math.sqrt(d * (1 + d / rp))) * rp
    elif case == "iii":
        pre["n_is_4"] = n == 4
        pre["d_coprime_4"] = math.gcd(d, 4) == 1
        value = (d - 1 + 3 * math.sqrt(d * (1 + math.sqrt(2) / rp))) * rp
    else:
        raise ValueError(f"unknown case {case!r}")
    return BoundEvaluation(f"thm4_{case}", pre, value, {"p": p, "k": k, "d": d, "n": n})


def bound_thm9(p: int, d: int, n: int, case_id: int) -> BoundEvaluation:
    """Bound on the squared magnitude |T_d(chi^e, s)|^2 for chi of order n."""
    rp = math.sqrt(p)
    pre = {"k_divides_p_1": (p - 1) % (d * n) == 0}
    if case_id == 1:
        pre["coprime_split"] = math.gcd(d, n) == 1
        value = d * (1 + d * n / rp) * p
    elif case_id == 2:
        pre["n_is_2"] = n == 2
        pre["d_odd"] = d % 2 == 1
        value = d * (1 + d / rp) * p
    elif case_id == 3:
        pre["n_is_4"] = n == 4
        pre["d_coprime_4"] = math.gcd(d, 4) == 1
        value = d * (1 + math.sqrt(2) / rp) * p
    else:
        raise ValueError(f"unknown case {case_id!r}")
    return BoundEvaluation(f"thm9_{case_id}", pre, value, {"p": p, "d": d, "n": n})


def f_k(x: float, k: float) -> float:
    if x <= 0:
        raise DomainError("f_k needs x > 0")
    return x - 1 + k / math.sqrt(x) - math.sqrt(x)


def minimize_fk(k: int) -> tuple[float, float]:
    """Minimizer of f_k on (sqrt(k), k^(3/4)) and the minimum value."""
    if k < 2:
        raise DomainError("minimize_fk needs k >= 2")
    lo, hi = k ** 0.5, k ** 0.75
    res = minimize_scalar(
        f_k, bounds=(lo, hi), args=(k,), method="bounded",
        options={"xatol": 1e-10 * hi, "maxiter": 500},
    )
    return float(res.x), float(res.fun)


def optimal_divisor(p: int, k: int) -> DivisorSearchResult:
    """Enumerate coprime splits k = d n with 1 < d < k and pick the smallest first bound."""
    cands = []
    for d in divisors(k):
        if 1 < d < k and math.gcd(d, k // d) == 1:
            cands.append((d, k // d, 1, bound_thm4(p, k, d, "i").value))
    best = min(cands, key=lambda c: (c[3], c[0]))[0] if cands else None
    return DivisorSearchResult(k, cands, best, (k ** 0.5, k ** 0.75))


def thm10_factor(k: int) -> int | None:
    """Smallest d | k with sqrt(k) < d < k^(3/4) and gcd(d, k/d) = 1, if any."""
    for d in divisors(k):
        if k ** 0.5 < d < k ** 0.75 and math.gcd(d, k // d) == 1:
            return d
    return None


def bound_thm10(p: int, k: int) -> BoundEvaluation:
    d = thm10_factor(k)
    pre = {
        "k_in_range": 17 < k < math.sqrt(p),
        "not_prime_power": not is_prime_power(k),
        "has_factor": d is not None,
    }
    value = 2 * k ** 0.75 * math.sqrt(p)
    return BoundEvaluation("thm10", pre, value, {"p": p, "k": k, "d": d})


def conjecture_line(p: int, k: int, eps: float = 0.0) -> float:
    if eps < 0:
        raise DomainError("epsilon must be >= 0")
    return (k * p) ** (0.5 + eps)


def improvement_ratio(d: int, n: int, p: int) -> RatioComparison:
    if d < 2 or n < 2:
        raise DomainError("improvement ratio needs d, n >= 2")
    k = d * n
    exact = (k - 1) / coefficient_cd(d, n, p)
    approx = math.sqrt(d) * n / (math.sqrt(d) + n)
    return RatioComparison(exact, approx)


def bounds_for(p: int, k: int) -> dict[str, BoundEvaluation]:
    """Bounds on |S_k| reported by scans; thm4_i is taken at the optimal divisor."""
    out = {
        "classical": bound_classical(k, p),
        "mvw": bound_mvw(k, p),
        "hbk": bound_hbk(k, p),
    }
    best = optimal_divisor(p, k).best_d if (p - 1) % k == 0 else None
    if best is not None:
        out["thm4_i"] = bound_thm4(p, k, best, "i")
    if k % 2 == 0:
        out["thm4_ii"] = bound_thm4(p, k, k // 2, "ii")
    if k % 4 == 0:
        out["thm4_iii"] = bound_thm4(p, k, k // 4, "iii")
    out["thm10"] = bound_thm10(p, k)
    return out
