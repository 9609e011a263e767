"""Arithmetic context for a single prime field F_p."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from primesums._backend import kernels
from primesums.errors import NotPrime, TooLarge, TooSmall

DEFAULT_MAX_P = 1 << 24

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def pow_mod(base: int, exp: int, p: int) -> int:
    """Return ``base**exp mod p``; ``pow_mod(0, 0, p) == 1``."""
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, p)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes ``p`` with ``lo <= p <= hi``, ascending."""
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def factorize(m: int) -> list[tuple[int, int]]:
    """Trial-division factorization, primes ascending."""
    if m < 1:
        raise ValueError("m must be positive")
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            j = 0
            while m % q == 0:
                m //= q
                j += 1
            out.append((q, j))
        q += 1 if q == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def divisors(m: int) -> list[int]:
    divs = [1]
    for q, j in factorize(m):
        divs = [d * q**i for d in divs for i in range(j + 1)]
    return sorted(divs)


def is_prime_power(m: int) -> bool:
    """True iff ``m = q**j`` with q prime and j >= 1 (so 1 is not)."""
    return m > 1 and len(factorize(m)) == 1


def multiplicative_order(x: int, p: int) -> int:
    """Order of ``x`` in F_p^* by direct stepping (oracle use; O(p))."""
    if x % p == 0:
        raise ValueError("0 has no multiplicative order")
    v, n = x % p, 1
    while v != 1:
        v = v * x % p
        n += 1
    return n


@dataclass(frozen=True, eq=False)
class FieldContext:
    """Immutable data for F_p: factorization of p-1, least primitive root, index table.

    ``index_table[x]`` is the discrete logarithm of ``x`` to base ``g``;
    ``index_table[0]`` is ``-1``. Derived tables are cached lazily and are
    safe to share between threads (recomputation is idempotent).
    """

    p: int
    factors: tuple[tuple[int, int], ...]
    g: int
    index_table: np.ndarray = field(repr=False)
    _powers: dict = field(default_factory=dict, repr=False)

    @cached_property
    def cos_table(self) -> np.ndarray:
        return np.cos(math.tau * np.arange(self.p) / self.p)

    @cached_property
    def sin_table(self) -> np.ndarray:
        return np.sin(math.tau * np.arange(self.p) / self.p)

    @cached_property
    def divisors(self) -> list[int]:
        return divisors(self.p - 1)

    def powers(self, k: int) -> np.ndarray:
        """The array ``x**k mod p`` for x in [0, p)."""
        tab = self._powers.get(k)
        if tab is None:
            tab = kernels.power_table(self.p, k)
            tab.setflags(write=False)
            self._powers[k] = tab
        return tab

    def coset_of(self, s: int, d: int) -> int:
        """Index j of the class g^j (F_p^*)^d containing s != 0."""
        return int(self.index_table[s % self.p]) % d


def least_primitive_root(p: int, factors=None) -> int:
    factors = factors if factors is not None else factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q, _ in factors):
            return g
    raise NotPrime(f"{p} has no primitive root")


def build_field_context(p: int, max_p: int = DEFAULT_MAX_P) -> FieldContext:
    p = int(p)
    if p < 5:
        raise TooSmall(f"p={p}: need p >= 5")
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if p > max_p:
        raise TooLarge(f"p={p} exceeds index-table cap {max_p}")
    factors = tuple(factorize(p - 1))
    g = least_primitive_root(p, factors)
    ind = kernels.index_table(p, g)
    ind.setflags(write=False)
    return FieldContext(p=p, factors=factors, g=g, index_table=ind)
