from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from helpers import brute_force_ideals, ring
from pisgraph import _kernels as K
from pisgraph.recognition import forbidden_library

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")

RINGS = ["Z 12", "GF 8", "mon 2 [x,y] / (x^2, y^2)", "prod(Z 4, GF 2)", "prod(Z 2, Z 3)"]


def _random_magma(rng, n):
    t = rng.integers(0, n, size=(n, n)).astype(np.int32)
    return np.triu(t) + np.triu(t, 1).T


def test_backend_reports_flag():
    assert K.backend() == ("numba" if K.USE_NUMBA else "numpy")


@pytest.mark.parametrize("text", RINGS)
def test_np_kernels_on_valid_rings(text):
    R = ring(text)
    assert K.np_assoc_violation(R.add) == K.NO_HIT
    assert K.np_assoc_violation(R.mul) == K.NO_HIT
    assert K.np_distrib_violation(R.add, R.mul) == K.NO_HIT


@pytest.mark.parametrize("text", [t for t in RINGS if ring(t).order <= 16])
def test_np_closed_subsets_match_python_scan(text):
    R = ring(text)
    got = [int(m) for m in K.np_closed_subsets(R.add, R.mul, R.zero)]
    assert got == brute_force_ideals(R)


def test_np_prime_violation():
    R = ring("Z 12")
    two = np.zeros(12, dtype=np.bool_)
    two[::2] = True
    assert K.np_prime_violation(R.mul, two) == (-1, -1)
    four = np.zeros(12, dtype=np.bool_)
    four[::4] = True
    a, b = K.np_prime_violation(R.mul, four)
    assert four[R.mul[a, b]] and not four[a] and not four[b]


@needs_numba
@pytest.mark.parametrize("seed", range(20))
def test_assoc_and_distrib_parity(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    a, m = _random_magma(rng, n), _random_magma(rng, n)
    assert K.nb_assoc_violation(a) == K.np_assoc_violation(a)
    assert K.nb_distrib_violation(a, m) == K.np_distrib_violation(a, m)


@needs_numba
@pytest.mark.parametrize("text", RINGS)
def test_ring_kernel_parity(text):
    R = ring(text)
    rng = np.random.default_rng(R.order)
    for _ in range(10):
        left = rng.random(R.order) < 0.4
        right = rng.random(R.order) < 0.4
        assert np.array_equal(K.nb_sumset(R.add, left, right), K.np_sumset(R.add, left, right))
        assert K.nb_prime_violation(R.mul, left) == K.np_prime_violation(R.mul, left)
    if R.order <= 16:
        assert np.array_equal(K.nb_closed_subsets(R.add, R.mul, R.zero), K.np_closed_subsets(R.add, R.mul, R.zero))


@needs_numba
@pytest.mark.parametrize("seed", range(30))
def test_first_induced_parity(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 12))
    upper = np.triu(rng.random((n, n)) < rng.uniform(0.2, 0.8), 1)
    adj = upper | upper.T
    lib = forbidden_library()
    for k, table in lib.tables.items():
        s1, i1 = K.nb_first_induced(adj, k, table)
        s2, i2 = K.np_first_induced(adj, k, table)
        assert i1 == i2
        assert (s1 is None and s2 is None) or list(s1) == list(s2)


@pytest.mark.parametrize("flag,expected", [("1", "numpy"), ("0", None)])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, PISGRAPH_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from pisgraph import _kernels; print(_kernels.backend())"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    if expected is None:
        expected = "numba" if K.HAVE_NUMBA else "numpy"
    assert out == expected
