import os
import subprocess
import sys

import numpy as np
import pytest

from topohopf import _kernels as K
from topohopf import qposet as qp

needs_numba = pytest.mark.skipif("numba" not in K.BACKENDS, reason="numba not importable")


def _random_relations(seed, count=40):
    rng = np.random.default_rng(seed)
    return [rng.random((n, n)) < p for n in (0, 1, 3, 5, 8) for p in (0.1, 0.4) for _ in range(count // 10)]


@needs_numba
def test_closure_backends_agree():
    for m in _random_relations(0):
        assert np.array_equal(K.closure_np(m), K.closure_jit(m))


@needs_numba
def test_upset_masks_backends_agree():
    for T in qp.all_topologies(range(4)):
        assert np.array_equal(K.upset_masks_np(T.leq), K.upset_masks_jit(T.leq))


@needs_numba
@pytest.mark.parametrize("n", range(6))
def test_quasi_orders_backends_agree(n):
    assert np.array_equal(K.quasi_orders_np(n), K.quasi_orders_jit(n))


@needs_numba
def test_min_relabeling_backends_agree():
    for T in qp.all_topologies(range(4)):
        n = len(T)
        for cls in (np.zeros(n, dtype=np.int64), np.arange(n, dtype=np.int64) % 2):
            a = K.min_relabeling_np(T.leq, cls, cls)
            b = K.min_relabeling_jit(T.leq, cls, cls)
            assert np.array_equal(T.leq[np.ix_(a, a)], T.leq[np.ix_(b, b)])


def test_closure_is_reflexive_transitive():
    for m in _random_relations(1):
        c = K.closure_np(m)
        assert c.diagonal().all() and not ((c.astype(int) @ c.astype(int) > 0) & ~c).any()
        assert (c | m).sum() == c.sum()


@pytest.mark.parametrize("flag, backend", [("1", "numpy"), ("0", "numba")])
def test_env_flag_selects_backend(flag, backend):
    if backend == "numba" and "numba" not in K.BACKENDS:
        pytest.skip("numba not importable")
    env = dict(os.environ, TOPOHOPF_DISABLE_JIT=flag)
    code = "from topohopf import _kernels as K, qposet as qp; print(K.ACTIVE, len(qp.all_topologies(range(4))))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == [backend, "355"]
