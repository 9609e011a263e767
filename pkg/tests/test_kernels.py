import math
import os

import numpy as np
import pytest

from primesums import _kernels_py
from primesums._backend import BACKEND
from primesums.prime_field import build_field_context

compiled = pytest.importorskip("primesums._kernels")


@pytest.mark.skipif(bool(os.environ.get("PRIMESUMS_PURE")), reason="fallback forced")
def test_compiled_backend_selected():
    assert BACKEND == "cython"


@pytest.mark.parametrize("p,g", [(5, 2), (13, 2), (1009, 11), (10007, 5)])
def test_index_tables_identical(p, g):
    assert np.array_equal(compiled.index_table(p, g), _kernels_py.index_table(p, g))


@pytest.mark.parametrize("p", [5, 13, 1009])
def test_power_tables_identical(p):
    x = np.arange(p)
    for k in (1, 2, 7, p - 1, 3 * p):
        a = compiled.power_table(p, k)
        assert np.array_equal(a, _kernels_py.power_table(p, k))
        assert a.tolist() == [pow(int(v), k, p) for v in x]


@pytest.mark.parametrize("p", [13, 101, 257])
def test_compensated_sums_bitwise_equal(p):
    rng = np.random.default_rng(p)
    ctx = build_field_context(p)
    pts = ctx.powers(3).copy()
    w_re, w_im = rng.standard_normal(p), rng.standard_normal(p)
    svals = np.arange(p, dtype=np.int64)
    a = compiled.weighted_exp_sums(ctx.cos_table, ctx.sin_table, pts, w_re, w_im, svals)
    b = _kernels_py.weighted_exp_sums(ctx.cos_table, ctx.sin_table, pts, w_re, w_im, svals)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_compensation_beats_naive_accumulation():
    # many tiny terms after one large one: plain summation drops them
    p = 10007
    ctx = build_field_context(p)
    pts = np.zeros(p, dtype=np.int64)
    w = np.full(p, 1e-16)
    w[0] = 1.0
    re, _ = compiled.weighted_exp_sums(ctx.cos_table, ctx.sin_table, pts, w, np.zeros(p),
                                       np.array([1], dtype=np.int64))
    assert abs(re[0] - math.fsum(w)) < 1e-18
