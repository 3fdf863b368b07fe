"""Micro-benchmark comparing the compiled and pure-NumPy kernel backends.

Runs both implementations on identical random inputs, asserts they agree
(including witnesses), and prints timings.  Usage: python3 -m bigonlab.bench
"""

from __future__ import annotations

import time

import numpy as np

from ._kernels import _pykern


def _random_metric(rng, n: int) -> np.ndarray:
    pts = rng.integers(0, 50, size=(n, 2))
    d = np.abs(pts[:, None, :] - pts[None, :, :]).sum(axis=2)
    return d.astype(np.int32)


def _random_block(rng, g: int, m: int, nverts: int):
    dist = rng.integers(0, 12, size=(nverts, nverts)).astype(np.int32)
    dist = np.minimum(dist, dist.T)
    np.fill_diagonal(dist, 0)
    depth = rng.integers(0, 6, size=nverts).astype(np.int32)
    P = rng.integers(0, nverts, size=(g, m)).astype(np.int32)
    return dist, depth, P


def _time(fn, *args, repeat: int = 3):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return out, best


def main() -> None:
    try:
        from ._kernels import _ckern
    except ImportError:
        print("compiled backend unavailable; showing python backend only")
        _ckern = None
    rng = np.random.default_rng(7)

    n = 161
    dist = _random_metric(rng, n)
    py, t_py = _time(_pykern.four_point_double_delta, dist)
    line = f"four_point_double_delta n={n}: python {t_py:.3f}s"
    if _ckern is not None:
        cc, t_c = _time(_ckern.four_point_double_delta, dist)
        assert cc == py, (cc, py)
        line += f"  compiled {t_c:.3f}s  speedup {t_py / t_c:.1f}x"
    print(line)

    g, m, nverts = 1200, 11, 400
    dist, depth, P = _random_block(rng, g, m, nverts)
    xs = np.arange(11, dtype=np.int64)
    args = (dist, depth, 10, P, P, True, 0, g * (g - 1) // 2, xs, 3)
    py, t_py = _time(_pykern.block_pair_stats, *args)
    line = (f"block_pair_stats pairs={g * (g - 1) // 2}: "
            f"python {t_py:.3f}s")
    if _ckern is not None:
        cc, t_c = _time(_ckern.block_pair_stats, *args)
        same = all(
            np.array_equal(cc[k], py[k]) if isinstance(py[k], np.ndarray)
            else cc[k] == py[k]
            for k in py
        )
        assert same, "backend mismatch"
        line += f"  compiled {t_c:.3f}s  speedup {t_py / t_c:.1f}x"
    print(line)


if __name__ == "__main__":
    main()
