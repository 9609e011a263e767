"""Evaluation of S_k(s), the twisted sums T_d(chi^e, s), and their batch forms.

All single-sum evaluators run through the compensated kernel with summands
in ascending x, so results are reproducible to the last bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from primesums._backend import kernels
from primesums.characters import CharacterSpec, character
from primesums.errors import OrderDoesNotDivide
from primesums.prime_field import FieldContext


@dataclass(frozen=True)
class SumValue:
    re: float
    im: float
    terms: int

    @property
    def magnitude(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def error_bound(self) -> float:
        return 1e-12 * self.terms


@dataclass(frozen=True)
class PowerHistogram:
    k: int
    counts: np.ndarray

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.counts)


@dataclass(frozen=True)
class SpectrumDecomposition:
    d: int
    n: int
    s: int
    components: list[SumValue]
    recombined: complex
    target: SumValue

    @property
    def residual(self) -> float:
        return abs(self.recombined - self.target.value)


_ONES: dict[int, np.ndarray] = {}
_ZEROS: dict[int, np.ndarray] = {}


def _unit_weights(p: int) -> tuple[np.ndarray, np.ndarray]:
    if p not in _ONES:
        _ONES[p] = np.ones(p)
        _ZEROS[p] = np.zeros(p)
    return _ONES[p], _ZEROS[p]


def _svals(svals, p: int) -> np.ndarray:
    if svals is None:
        return np.arange(p, dtype=np.int64)
    return np.ascontiguousarray(np.atleast_1d(np.asarray(svals, dtype=np.int64)) % p)


def S_values(ctx: FieldContext, k: int, svals=None) -> np.ndarray:
    """S_k(s) for each s in ``svals`` (default: all of [0, p)) as complex128."""
    ones, zeros = _unit_weights(ctx.p)
    re, im = kernels.weighted_exp_sums(
        ctx.cos_table, ctx.sin_table, ctx.powers(k), ones, zeros, _svals(svals, ctx.p)
    )
    return re + 1j * im


def T_values(ctx: FieldContext, d: int, chi: CharacterSpec, svals=None) -> np.ndarray:
    """T_d(chi^e, s) = sum_x chi^e(x) e(s x^d / p) for each s."""
    if (ctx.p - 1) % d:
        raise OrderDoesNotDivide(f"d={d} does not divide p-1={ctx.p - 1}")
    w = chi.values
    re, im = kernels.weighted_exp_sums(
        ctx.cos_table,
        ctx.sin_table,
        ctx.powers(d),
        np.ascontiguousarray(w.real),
        np.ascontiguousarray(w.imag),
        _svals(svals, ctx.p),
    )
    return re + 1j * im


def _as_sum(z: complex, terms: int) -> SumValue:
    return SumValue(float(z.real), float(z.imag), terms)


def eval_S(ctx: FieldContext, k: int, s: int) -> SumValue:
    if k < 1:
        raise ValueError("k must be >= 1")
    return _as_sum(S_values(ctx, k, [s])[0], ctx.p)


def eval_T(ctx: FieldContext, d: int, chi: CharacterSpec, s: int) -> SumValue:
    return _as_sum(T_values(ctx, d, chi, [s])[0], ctx.p)


def gauss_sum(ctx: FieldContext, chi: CharacterSpec, s: int) -> SumValue:
    return eval_T(ctx, 1, chi, s)


def reduce_exponent(ctx: FieldContext, k: int) -> int:
    """gcd(k, p-1); x -> x^k and x -> x^gcd have the same image multiset."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.gcd(k, ctx.p - 1)


def spectrum(ctx: FieldContext, d: int, n: int, s: int) -> SpectrumDecomposition:
    if n < 1 or d < 1 or (ctx.p - 1) % (d * n):
        raise OrderDoesNotDivide(f"d*n={d * n} does not divide p-1={ctx.p - 1}")
    comps = [eval_T(ctx, d, character(ctx, n, e), s) for e in range(n)]
    recombined = complex(
        math.fsum(c.re for c in comps), math.fsum(c.im for c in comps)
    )
    return SpectrumDecomposition(d, n, s % ctx.p, comps, recombined, eval_S(ctx, d * n, s))


def power_histogram(ctx: FieldContext, k: int) -> PowerHistogram:
    counts = np.bincount(ctx.powers(k), minlength=ctx.p)
    return PowerHistogram(k, counts)


def _bluestein_dft(c: np.ndarray) -> np.ndarray:
    """X[s] = sum_y c[y] exp(+2 pi i s y / m) for arbitrary length m via chirp-z."""
    m = c.shape[0]
    j = np.arange(m, dtype=np.int64)
    # exp(i pi j^2 / m), reducing j^2 mod 2m keeps the phase argument small
    chirp = np.exp(1j * math.pi * ((j * j) % (2 * m)) / m)
    size = 1 << int(2 * m - 1).bit_length()
    a = np.zeros(size, dtype=np.complex128)
    a[:m] = c * chirp
    b = np.zeros(size, dtype=np.complex128)
    b[:m] = np.conj(chirp)
    b[size - m + 1:] = np.conj(chirp[1:])[::-1]
    conv = np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))[:m]
    return chirp * conv


def batch_S_all_s(ctx: FieldContext, k: int, method: str = "fast") -> np.ndarray:
    """S_k(s) for every s in [0, p), from the fiber counts of x -> x^k.

    ``method="fast"`` uses a chirp-z transform on power-of-two FFTs;
    ``method="naive"`` evaluates the length-p DFT directly with compensated
    summation over the histogram support. Returns a complex128 array.
    """
    hist = power_histogram(ctx, k)
    if method == "fast":
        out = _bluestein_dft(hist.counts.astype(np.float64))
        out[0] = hist.counts.sum()  # exact: every summand is 1
        return out
    if method == "naive":
        support = np.ascontiguousarray(hist.support.astype(np.int64))
        w = np.ascontiguousarray(hist.counts[support].astype(np.float64))
        re, im = kernels.weighted_exp_sums(
            ctx.cos_table, ctx.sin_table, support, w, np.zeros_like(w),
            np.arange(ctx.p, dtype=np.int64),
        )
        return re + 1j * im
    raise ValueError(f"unknown method {method!r}")


def argmax_smallest(mags: np.ndarray, rtol: float = 1e-9) -> int:
    """Index of the maximum, treating values within ``rtol * max`` as ties (smallest wins)."""
    top = mags.max()
    return int(np.flatnonzero(mags >= top - rtol * max(top, 1.0))[0])


def max_abs_S(ctx: FieldContext, k: int, values: np.ndarray | None = None) -> tuple[float, int]:
    """(max_{s != 0} |S_k(s)|, smallest maximizing s)."""
    if values is None:
        values = batch_S_all_s(ctx, k)
    mags = np.abs(values[1:])
    i = argmax_smallest(mags)
    return float(mags[i]), i + 1
