"""Multiplicative characters of F_p^* and the incomplete sums over z^d != 1."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from primesums.errors import (
    GcdViolation,
    OrderDoesNotDivide,
    PowerOutOfRange,
    PrincipalCharacter,
)
from primesums.prime_field import FieldContext


@dataclass(frozen=True, eq=False)
class CharacterSpec:
    """The e-th power of the canonical order-n character, chi(g^a) = exp(2 pi i a / n).

    Values at 0: the principal character (e = 0) is 1 there, every other
    power is 0.
    """

    ctx: FieldContext = field(repr=False)
    n: int
    e: int

    @property
    def principal(self) -> bool:
        return self.e == 0

    @cached_property
    def roots(self) -> np.ndarray:
        a = np.arange(self.n)
        return np.cos(math.tau * a / self.n) + 1j * np.sin(math.tau * a / self.n)

    @cached_property
    def values(self) -> np.ndarray:
        """chi^e(x) for every x in [0, p) as a complex array."""
        ind = self.ctx.index_table.copy()
        ind[0] = 0
        vals = self.roots[(self.e * ind) % self.n]
        vals[0] = 1.0 if self.principal else 0.0
        vals.setflags(write=False)
        return vals


@dataclass(frozen=True)
class IncompleteSumParams:
    d: int
    n: int
    N: int
    a: int
    b: int


def character(ctx: FieldContext, n: int, e: int = 1) -> CharacterSpec:
    if n < 1 or (ctx.p - 1) % n:
        raise OrderDoesNotDivide(f"order {n} does not divide p-1={ctx.p - 1}")
    if not 0 <= e < n:
        raise PowerOutOfRange(f"power {e} outside [0, {n})")
    return CharacterSpec(ctx, n, e)


def chi_eval(chi: CharacterSpec, x: int) -> complex:
    return complex(chi.values[x % chi.ctx.p])


def incomplete_params(ctx: FieldContext, d: int, n: int) -> IncompleteSumParams:
    N = (ctx.p - 1) // d
    a, b = divmod(N - 1, n)
    return IncompleteSumParams(d, n, N, a, b)


def incomplete_sum_direct(ctx: FieldContext, d: int, chi: CharacterSpec) -> complex:
    """Sum of chi^e(z^{-1}) over z in F_p^* with z^d != 1, by enumeration.

    Uses modular inverses rather than the index table for z^{-1}.
    """
    p = ctx.p
    if (p - 1) % d:
        raise OrderDoesNotDivide(f"d={d} does not divide p-1={p - 1}")
    if chi.principal:
        raise PrincipalCharacter("incomplete sum needs a non-principal power")
    vals = chi.values
    re, im = [], []
    for z in range(1, p):
        if pow(z, d, p) == 1:
            continue
        v = vals[pow(z, -1, p)]
        re.append(v.real)
        im.append(v.imag)
    return complex(math.fsum(re), math.fsum(im))


def incomplete_sum_closed_form(ctx: FieldContext, d: int, chi: CharacterSpec) -> complex:
    """d * sum_{s=1}^{b} conj(chi^e)(g^s), where N - 1 = a n + b and N = (p-1)/d."""
    p = ctx.p
    if (p - 1) % d:
        raise OrderDoesNotDivide(f"d={d} does not divide p-1={p - 1}")
    if chi.principal:
        raise PrincipalCharacter("incomplete sum needs a non-principal power")
    if math.gcd(d, chi.n) != 1:
        raise GcdViolation(f"gcd(d={d}, n={chi.n}) != 1")
    prm = incomplete_params(ctx, d, chi.n)
    # chi^e(g^s) = roots[e*s mod n], read straight off the order-n roots
    terms = [np.conj(chi.roots[(chi.e * s) % chi.n]) for s in range(1, prm.b + 1)]
    re = math.fsum(t.real for t in terms)
    im = math.fsum(t.imag for t in terms)
    return d * complex(re, im)
