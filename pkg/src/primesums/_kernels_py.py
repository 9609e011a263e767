"""Pure numpy versions of the compiled kernels.

Same signatures and the same floating-point operation order as the Cython
module. The compensated sums loop over summands in Python and vectorize
across frequencies, so both backends produce identical bits.
"""
from __future__ import annotations

import numpy as np


def index_table(p: int, g: int) -> np.ndarray:
    ind = np.full(p, -1, dtype=np.int64)
    v = 1
    for a in range(p - 1):
        ind[v] = a
        v = v * g % p
    return ind


def power_table(p: int, k: int) -> np.ndarray:
    base = np.arange(p, dtype=np.int64)
    out = np.full(p, 1 % p, dtype=np.int64)
    e = k
    while e > 0:
        if e & 1:
            out = out * base % p
        base = base * base % p
        e >>= 1
    return out


def weighted_exp_sums(cos_t, sin_t, pts, w_re, w_im, svals):
    cos_t = np.asarray(cos_t, dtype=np.float64)
    sin_t = np.asarray(sin_t, dtype=np.float64)
    p = cos_t.shape[0]
    s = np.asarray(svals, dtype=np.int64) % p
    sr = np.zeros(s.shape[0])
    si = np.zeros(s.shape[0])
    cr = np.zeros(s.shape[0])
    ci = np.zeros(s.shape[0])
    for pt, wr, wi in zip(np.asarray(pts, dtype=np.int64).tolist(),
                          np.asarray(w_re, dtype=np.float64).tolist(),
                          np.asarray(w_im, dtype=np.float64).tolist()):
        idx = s * pt % p
        c = cos_t[idx]
        sn = sin_t[idx]
        vr = wr * c - wi * sn
        vi = wr * sn + wi * c
        y = vr - cr
        t = sr + y
        cr = (t - sr) - y
        sr = t
        y = vi - ci
        t = si + y
        ci = (t - si) - y
        si = t
    return sr, si
