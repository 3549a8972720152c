"""Compiled and pure-Python kernels must agree bit for bit."""

import numpy as np
import pytest

from fpfun._core import kernels_py

compiled = pytest.importorskip("fpfun._core._kernels")


def random_cases(seed=7, count=60):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        p = int(rng.choice([2, 3, 5, 7, 101]))
        r = int(rng.integers(0, 8))
        c = int(rng.integers(0, 8))
        yield p, rng.integers(0, p, size=(r, c)).astype(np.int64)


def test_rref_parity():
    for p, a in random_cases():
        m_c, piv_c = compiled.rref(a, p)
        m_p, piv_p = kernels_py.rref(a, p)
        assert list(piv_c) == list(piv_p)
        assert np.array_equal(m_c, m_p)


def test_matmul_parity():
    rng = np.random.default_rng(11)
    for _ in range(40):
        p = int(rng.choice([2, 3, 7, 10007]))
        n, k, m = (int(x) for x in rng.integers(0, 7, size=3))
        a = rng.integers(0, p, size=(n, k)).astype(np.int64)
        b = rng.integers(0, p, size=(k, m)).astype(np.int64)
        assert np.array_equal(compiled.matmul(a, b, p), kernels_py.matmul(a, b, p))


def test_inputs_not_mutated():
    a = np.array([[1, 1], [1, 0]], dtype=np.int64)
    before = a.copy()
    compiled.rref(a, 2)
    kernels_py.rref(a, 2)
    assert np.array_equal(a, before)
