import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from andcohom import _kernels
from andcohom.linalg import Field

needs_numba = pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba not available")


def test_rank_mod_p_small():
    a = np.array([[1, 1], [1, -1]])
    assert _kernels.rank_mod_p(a, 2, use_numba=False) == 1
    assert _kernels.rank_mod_p(a, 3, use_numba=False) == 2
    assert _kernels.rank_mod_p(np.zeros((0, 3), dtype=np.int64), 5) == 0


def test_rank_matches_rational_rank_for_large_prime():
    rng = np.random.default_rng(0)
    for _ in range(30):
        a = rng.integers(-3, 4, size=(int(rng.integers(1, 7)), int(rng.integers(1, 7))))
        rat = Field().rank(Field().array(a.tolist()))
        assert _kernels.rank_mod_p(a, 1_000_003, use_numba=False) == rat


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.sampled_from([2, 3, 7, 101, 2_147_483_647]), st.integers(0, 10**6))
def test_rank_parity(m, n, p, seed):
    a = np.random.default_rng(seed).integers(-5, 6, size=(m, n))
    assert _kernels.rank_mod_p(a, p, use_numba=True) == _kernels.rank_mod_p(a, p, use_numba=False)


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_subadditive_parity(n, seed):
    rng = np.random.default_rng(seed)
    h = rng.integers(0, 5, size=1 << n)
    assert _kernels.subadditive_violation(h, use_numba=True) == _kernels.subadditive_violation(h, use_numba=False)


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_conj_closed_parity(n, seed):
    member = np.random.default_rng(seed).random(1 << n) < 0.6
    assert _kernels.conj_closed_violation(member, use_numba=True) == \
        _kernels.conj_closed_violation(member, use_numba=False)


@pytest.mark.parametrize("use_numba", [False, pytest.param(True, marks=needs_numba)])
def test_violation_witnesses(use_numba):
    h = np.array([1, 0, 0, 0])  # h(0) = 1 > h(1) + h(2)
    i, j = _kernels.subadditive_violation(h, use_numba=use_numba)
    assert h[i & j] > h[i] + h[j]
    assert _kernels.subadditive_violation(np.arange(4) * 0, use_numba=use_numba) is None
    member = np.array([False, True, True, True])
    i, j = _kernels.conj_closed_violation(member, use_numba=use_numba)
    assert member[i] and member[j] and not member[i & j]


def test_env_flag_disables_numba():
    env = dict(os.environ, ANDCOHOM_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from andcohom import _kernels; print(_kernels.HAS_NUMBA)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


@needs_numba
def test_benchmark_runs_and_agrees(capsys):
    sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(__file__)), "benchmarks"))
    import bench_kernels

    assert bench_kernels.main(["--repeat", "1", "--json"]) == 0
    assert "speedup" in capsys.readouterr().out
