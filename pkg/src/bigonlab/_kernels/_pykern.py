"""Pure-NumPy kernel implementations (fallback backend).

Both backends implement the same two hot operations with identical
semantics, including witness tie-breaking (first pair in canonical order):

* ``four_point_double_delta`` — max of S1 - S2 over vertex quadruples,
  where S1 >= S2 >= S3 are the three pairwise distance sums (twice the
  four-point hyperbolicity constant of the sample).
* ``block_pair_stats`` — width/exceedance/gap statistics over a block of
  equal-length path pairs.
"""

from __future__ import annotations

import numpy as np

_PAIR_CHUNK = 200_000


def four_point_double_delta(dist: np.ndarray) -> int:
    """dist: symmetric (n, n) int32 matrix of exact distances."""
    n = dist.shape[0]
    if n < 2:
        return 0
    iu, ju = np.triu_indices(n, 1)
    npairs = iu.size
    d_pair = dist[iu, ju].astype(np.int64)
    best = 0
    # Scan (pair) x (pair); overlapping/degenerate quadruples contribute
    # values <= 0, so clamping at 0 makes the redundancy harmless.
    rows = max(1, _PAIR_CHUNK // max(npairs, 1))
    for lo in range(0, npairs, rows):
        hi = min(npairs, lo + rows)
        i, j = iu[lo:hi, None], ju[lo:hi, None]
        a = d_pair[lo:hi, None] + d_pair[None, :]
        b = dist[i, iu[None, :]].astype(np.int64) + dist[j, ju[None, :]]
        c = dist[i, ju[None, :]].astype(np.int64) + dist[j, iu[None, :]]
        mx = np.maximum(np.maximum(a, b), c)
        mn = np.minimum(np.minimum(a, b), c)
        val = 2 * mx + mn - (a + b + c)  # = max - median
        m = int(val.max())
        if m > best:
            best = m
    return best


def block_pair_stats(dist, depth, radius, P, Q, triangular, start, limit,
                     xs, small_cap):
    """Statistics over pairs of rows (one from P, one from Q).

    Pairs are taken in canonical order: (i, j) with i < j lexicographic when
    ``triangular`` (P is Q), else row-major over P x Q.  At most ``limit``
    pairs are consumed; ``start`` is the global index of the block's first
    pair, used for witness indices.

    Returns a dict with: consumed, untrusted, exc_max, exc_arg (per x),
    width_max, width_arg, gap_max, gap_arg.
    """
    m = P.shape[1]
    if triangular:
        ii, jj = np.triu_indices(P.shape[0], 1)
    else:
        ii, jj = np.meshgrid(
            np.arange(P.shape[0]), np.arange(Q.shape[0]), indexing="ij"
        )
        ii, jj = ii.ravel(), jj.ravel()
    if limit < ii.size:
        ii, jj = ii[:limit], jj[:limit]
    npairs = ii.size
    q = len(xs)
    out = {
        "consumed": npairs,
        "untrusted": 0,
        "exc_max": np.zeros(q, dtype=np.int64),
        "exc_arg": np.full(q, -1, dtype=np.int64),
        "width_max": -1,
        "width_arg": -1,
        "gap_max": -1,
        "gap_arg": -1,
    }
    if npairs == 0:
        return out
    xs = np.asarray(xs, dtype=np.int64)
    chunk = max(1, _PAIR_CHUNK // max(m, 1))
    for lo in range(0, npairs, chunk):
        hi = min(npairs, lo + chunk)
        A = P[ii[lo:hi]]
        B = Q[jj[lo:hi]]
        W = dist[A, B].astype(np.int64)  # (pairs, m) widths
        da, db = depth[A], depth[B]
        out["untrusted"] += int(
            np.any(np.minimum(da, db) + W > radius, axis=1).sum()
        )
        # exceedance counts per x, first argmax wins
        counts = (W[:, :, None] > xs[None, None, :]).sum(axis=1)  # (pairs, q)
        cmax = counts.max(axis=0)
        carg = counts.argmax(axis=0)
        better = cmax > out["exc_max"]
        out["exc_arg"][better] = start + lo + carg[better]
        out["exc_max"][better] = cmax[better]
        # max width
        wrow = W.max(axis=1)
        k = int(wrow.argmax())
        if int(wrow[k]) > out["width_max"]:
            out["width_max"] = int(wrow[k])
            out["width_arg"] = start + lo + k
        # max gap between consecutive small jumpers (w <= small_cap);
        # bigon profiles have small jumpers at both ends.
        small = W <= small_cap
        idx = np.arange(m, dtype=np.int64)
        last = np.where(small, idx[None, :], -1)
        np.maximum.accumulate(last, axis=1, out=last)
        gaps = np.where(small[:, 1:] & (last[:, :-1] >= 0),
                        idx[None, 1:] - last[:, :-1], 0)
        grow = gaps.max(axis=1) if m > 1 else np.zeros(hi - lo, dtype=np.int64)
        k = int(grow.argmax())
        if int(grow[k]) > out["gap_max"]:
            out["gap_max"] = int(grow[k])
            out["gap_arg"] = start + lo + k
    return out
