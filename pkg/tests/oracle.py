"""Slow reference computations that share no code with the package."""
import cmath
import math


def e_p(t, p):
    return cmath.exp(2j * math.pi * (t % p) / p)


def S_brute(p, k, s):
    return sum(e_p(s * pow(x, k, p), p) for x in range(p))


def primitive_root_brute(p):
    for g in range(2, p):
        seen, v = set(), 1
        for _ in range(p - 1):
            v = v * g % p
            seen.add(v)
        if len(seen) == p - 1:
            return g


def dlog_brute(p, g):
    out, v = {}, 1
    for a in range(p - 1):
        out[v] = a
        v = v * g % p
    return out


def chi_brute(p, n, e, x):
    """Canonical order-n character to the power e, built from a brute-force dlog."""
    if x % p == 0:
        return 1 if e == 0 else 0
    g = primitive_root_brute(p)
    a = dlog_brute(p, g)[x % p]
    return cmath.exp(2j * math.pi * e * a / n)


def T_brute(p, d, n, e, s):
    g = primitive_root_brute(p)
    ind = dlog_brute(p, g)
    total = 1 if e == 0 else 0
    for x in range(1, p):
        total += cmath.exp(2j * math.pi * e * ind[x] / n) * e_p(s * pow(x, d, p), p)
    return total


def solutions_xk_eq_yk(p, k):
    """#{(x, y) in F_p^2 : x^k = y^k}."""
    vals = [pow(x, k, p) for x in range(p)]
    return sum(1 for a in vals for b in vals if a == b)
