import numpy as np
import pytest

from bigonlab._kernels import _pykern

_ckern = pytest.importorskip("bigonlab._kernels._ckern")


def _random_metricish(rng, n):
    """L1 distance matrix of random lattice points: a genuine metric, which
    the four-point kernels assume."""
    pts = rng.integers(0, 7, size=(n, 2))
    d = np.abs(pts[:, None, :] - pts[None, :, :]).sum(axis=2)
    return d.astype(np.int32)


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_four_point_agreement(seed, n):
    rng = np.random.default_rng(seed)
    dist = _random_metricish(rng, n)
    assert _pykern.four_point_double_delta(dist) == \
        _ckern.four_point_double_delta(dist)


def _random_block(rng, n, rows0, rows1, m):
    dist = _random_metricish(rng, n)
    depth = rng.integers(0, 5, size=n).astype(np.int32)
    P = rng.integers(0, n, size=(rows0, m)).astype(np.int32)
    Q = rng.integers(0, n, size=(rows1, m)).astype(np.int32)
    return dist, depth, P, Q


def _assert_same(a, b):
    for key in ("consumed", "untrusted", "width_max", "width_arg",
                "gap_max", "gap_arg"):
        assert a[key] == b[key], key
    assert np.array_equal(a["exc_max"], b["exc_max"])
    assert np.array_equal(a["exc_arg"], b["exc_arg"])


@pytest.mark.parametrize("seed", range(10))
def test_block_pair_stats_rectangular(seed):
    rng = np.random.default_rng(100 + seed)
    n, m = 20, 5
    dist, depth, P, Q = _random_block(rng, n, 6, 4, m)
    xs = np.arange(0, 6, dtype=np.int64)
    args = (dist, depth, 8, P, Q, False, 17, 10 ** 9, xs, 3)
    _assert_same(_pykern.block_pair_stats(*args),
                 _ckern.block_pair_stats(*args))


@pytest.mark.parametrize("seed", range(10))
def test_block_pair_stats_triangular(seed):
    rng = np.random.default_rng(200 + seed)
    n, m = 15, 4
    dist, depth, P, _ = _random_block(rng, n, 7, 1, m)
    xs = np.arange(0, 4, dtype=np.int64)
    args = (dist, depth, 6, P, P, True, 0, 10 ** 9, xs, 1)
    _assert_same(_pykern.block_pair_stats(*args),
                 _ckern.block_pair_stats(*args))


@pytest.mark.parametrize("limit", [0, 1, 3, 7, 10 ** 6])
def test_block_pair_stats_limit(limit):
    rng = np.random.default_rng(42)
    dist, depth, P, Q = _random_block(rng, 12, 4, 5, 3)
    xs = np.arange(0, 3, dtype=np.int64)
    args = (dist, depth, 5, P, Q, False, 3, limit, xs, 2)
    a = _pykern.block_pair_stats(*args)
    b = _ckern.block_pair_stats(*args)
    _assert_same(a, b)
    assert a["consumed"] == min(limit, 20)


def test_backend_env_override():
    import subprocess
    import sys
    code = "from bigonlab._kernels import BACKEND; print(BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env={"PATH": "/usr/bin:/bin",
                                         "BIGONLAB_KERNEL": "python"})
    assert out.stdout.strip() == "python"
