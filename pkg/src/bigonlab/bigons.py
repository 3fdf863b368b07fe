"""Bands, bigons, width profiles, and their exceedance statistics.

A *band* is an ordered pair of equal-length geodesic paths; a *bigon* is an
unordered pair of distinct equal-length geodesics whose endpoint distances
sum to at most 1.  Bigons are enumerated up to simultaneous reversal of both
sides (the reversed pair carries the mirrored width profile, so every
statistic reported here is invariant), with the lexicographically smaller
side stored first.

Enumeration is organized in *blocks* of geodesic pairs sharing endpoints:

* same-endpoint blocks: all unordered pairs of distinct geodesics u -> v,
  for core pairs u < v;
* fork blocks: all pairs (alpha: u -> v, alpha': u -> v') for a common core
  start u and adjacent core ends v < v'.

Blocks appear in lexicographic endpoint order, pairs within a block in
lexicographic path order; this fixed order defines stream indices used for
witnesses and for count-cap truncation.
"""

from __future__ import annotations

from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import block_pair_stats
from .cayley import GeodesicPath, GraphBall, TrustError


@dataclass(frozen=True)
class Band:
    side0: GeodesicPath
    side1: GeodesicPath

    def __post_init__(self):
        if self.side0.length != self.side1.length:
            raise ValueError("band sides must have equal length")

    @property
    def length(self) -> int:
        return self.side0.length

    def reversed_sides(self) -> "Band":
        return Band(GeodesicPath(self.side0.vertices[::-1]),
                    GeodesicPath(self.side1.vertices[::-1]))

    def swapped(self) -> "Band":
        return Band(self.side1, self.side0)


@dataclass(frozen=True)
class WidthProfile:
    values: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.values) - 1


def make_band(side0: GeodesicPath, side1: GeodesicPath) -> Band:
    """Band with canonical side order (lexicographically smaller first)."""
    if side1.vertices < side0.vertices:
        side0, side1 = side1, side0
    return Band(side0, side1)


def geo_distance(b: GraphBall, a: GeodesicPath, a2: GeodesicPath) -> int:
    """max{1, d(starts) + d(ends)}; defined for distinct paths only."""
    if a.vertices == a2.vertices:
        raise ValueError("geodesic distance is defined for distinct paths")
    ds = b.exact_distance(a.vertices[0], a2.vertices[0])
    de = b.exact_distance(a.vertices[-1], a2.vertices[-1])
    return max(1, ds + de)


def is_bigon(b: GraphBall, band: Band) -> bool:
    return (band.side0.vertices != band.side1.vertices
            and geo_distance(b, band.side0, band.side1) == 1)


def is_fork(b: GraphBall, band: Band) -> bool:
    return (b.exact_distance(band.side0.vertices[0], band.side1.vertices[0])
            <= 1)


def width_profile(b: GraphBall, band: Band) -> WidthProfile:
    """Pointwise distances between corresponding band vertices (exact)."""
    vals = tuple(
        b.exact_distance(x, y)
        for x, y in zip(band.side0.vertices, band.side1.vertices)
    )
    return WidthProfile(vals)


def exceedance(profile: WidthProfile, x: int) -> tuple[int, Fraction]:
    if profile.length < 1:
        raise ValueError("exceedance needs a profile of positive length")
    count = sum(1 for v in profile.values if v > x)
    return count, Fraction(count, profile.length)


def small_jumpers(profile: WidthProfile, Y: int) -> list[int]:
    cap = 2 * Y + 1
    return [i for i, v in enumerate(profile.values) if v <= cap]


def max_small_jumper_gap(profile: WidthProfile, Y: int) -> int:
    cap = 2 * Y + 1
    js = small_jumpers(profile, Y)
    if not js or js[0] != 0 or js[-1] != profile.length:
        raise ValueError(
            "profile ends must be small jumpers (not a bigon profile)"
        )
    return max(b - a for a, b in zip(js, js[1:])) if len(js) > 1 else 0


def rank(b: GraphBall, band: Band, p: int, t: int, t2: int) -> int:
    """t2 - t + p - d(side0(t), side1(t2)) for a p-equilateral segment of a
    fork."""
    if not is_fork(b, band):
        raise ValueError("rank is defined on forks")
    if not 0 <= t < t2 <= band.length:
        raise ValueError("need 0 <= t < t2 <= band length")
    w = width_profile(b, band).values
    if w[t] != p or w[t2] != p:
        raise ValueError(f"not (p={p})-equilateral: widths {w[t]}, {w[t2]}")
    return t2 - t + p - b.exact_distance(band.side0.vertices[t],
                                         band.side1.vertices[t2])


def dense_values(profile: WidthProfile, I: tuple[int, int], D: int,
                 rho: Fraction) -> list[int]:
    """Values p <= D whose preimage occupies density >= rho of the closed
    index segment I = (lo, hi); |I| = hi - lo."""
    lo, hi = I
    if not (0 <= lo < hi <= profile.length):
        raise ValueError("I must be a nonempty subsegment of the profile")
    counts: dict[int, int] = {}
    for i in range(lo, hi + 1):
        v = profile.values[i]
        counts[v] = counts.get(v, 0) + 1
    need = Fraction(rho) * (hi - lo)
    return sorted(p for p, c in counts.items() if p <= D and c >= need)


def find_regular_segment(profile: WidthProfile, I, p: int, N: int, K: int):
    """Subdivision search for an N-piece regular segment.

    A segment is regular when each of its N congruent closed pieces contains
    a p-jumper.  Starting from I (endpoints may be rationals), descend into
    a maximal-jumper-count piece (leftmost tie) up to K times; returns the
    first regular segment found as an exact (Fraction, Fraction) pair, or
    None.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    jumpers = [i for i, v in enumerate(profile.values) if v == p]
    lo, hi = Fraction(I[0]), Fraction(I[1])
    if not jumpers or hi <= lo:
        return None
    for _level in range(K + 1):
        piece = (hi - lo) / N
        cuts = [lo + k * piece for k in range(N + 1)]
        counts = [
            sum(1 for j in jumpers if cuts[k] <= j <= cuts[k + 1])
            for k in range(N)
        ]
        if all(c > 0 for c in counts):
            return (lo, hi)
        k = max(range(N), key=lambda i: (counts[i], -i))
        lo, hi = cuts[k], cuts[k + 1]
    return None


# -- block enumeration ----------------------------------------------------


@dataclass
class _Block:
    start: int          # global stream index of the first pair
    npairs: int
    limit: int          # pairs to consume (count-cap aware)
    length: int         # common geodesic length l
    P: np.ndarray       # (g0, l+1) vertex ids
    Q: np.ndarray       # (g1, l+1); is P for triangular blocks
    triangular: bool


def _geodesic_matrix(ball: GraphBall, cache: dict, u: int, v: int):
    m = cache.get((u, v))
    if m is None:
        paths, _ = ball.enumerate_geodesics(u, v)
        m = np.array([p.vertices for p in paths], dtype=np.int32)
        cache[(u, v)] = m
    return m


def iter_blocks(ball: GraphBall, length_cap: int, count_cap=None):
    """Deterministic bigon-pair blocks; see module docstring."""
    if length_cap > 2 * ball.core_radius:
        raise TrustError(
            f"length_cap {length_cap} exceeds 2 * core_radius "
            f"= {2 * ball.core_radius}"
        )
    core = ball.core_vertices()
    pos = {v: a for a, v in enumerate(core)}
    dmat = ball.core_distance_matrix()
    cache: dict = {}
    start = 0
    remaining = float("inf") if count_cap is None else count_cap

    def emit(P, Q, triangular, length):
        nonlocal start, remaining
        npairs = (P.shape[0] * (P.shape[0] - 1)) // 2 if triangular \
            else P.shape[0] * Q.shape[0]
        if npairs == 0:
            return None
        limit = int(min(npairs, remaining))
        blk = _Block(start, npairs, limit, length, P, Q, triangular)
        start += limit
        remaining -= limit
        return blk

    for a, u in enumerate(core):
        for bpos in range(a + 1, len(core)):
            l = int(dmat[a, bpos])
            if not 1 <= l <= length_cap:
                continue
            P = _geodesic_matrix(ball, cache, u, core[bpos])
            blk = emit(P, P, True, l)
            if blk is not None:
                yield blk
                if blk.limit < blk.npairs:
                    return
    for a, u in enumerate(core):
        row = dmat[a]
        for v in core:
            for v2 in ball.neighbors(v):
                if v2 <= v:
                    continue
                c2 = pos.get(v2)
                if c2 is None:
                    continue
                l = int(row[pos[v]])
                if not (1 <= l <= length_cap and int(row[c2]) == l):
                    continue
                P = _geodesic_matrix(ball, cache, u, v)
                Q = _geodesic_matrix(ball, cache, u, v2)
                blk = emit(P, Q, False, l)
                if blk is not None:
                    yield blk
                    if blk.limit < blk.npairs:
                        return


def _pair_from_offset(blk: _Block, offset: int) -> tuple[int, int]:
    if not blk.triangular:
        return divmod(offset, blk.Q.shape[0])
    g = blk.P.shape[0]
    i = 0
    row = g - 1
    while offset >= row:
        offset -= row
        i += 1
        row -= 1
    return i, i + 1 + offset


def band_at(ball: GraphBall, blocks: list[_Block], stream_index: int) -> Band:
    """Materialize the band at a global stream index."""
    starts = [b.start for b in blocks]
    k = bisect_right(starts, stream_index) - 1
    blk = blocks[k]
    i, j = _pair_from_offset(blk, stream_index - blk.start)
    return make_band(GeodesicPath(tuple(int(x) for x in blk.P[i])),
                     GeodesicPath(tuple(int(x) for x in blk.Q[j])))


def enumerate_bigons(ball: GraphBall, length_cap: int, count_cap=None):
    """Materialized bigon stream: (list of Band, truncated flag)."""
    out: list[Band] = []
    truncated = False
    for blk in iter_blocks(ball, length_cap, count_cap):
        if blk.limit < blk.npairs:
            truncated = True
        for off in range(blk.limit):
            i, j = _pair_from_offset(blk, off)
            out.append(make_band(GeodesicPath(tuple(int(x) for x in blk.P[i])),
                                 GeodesicPath(tuple(int(x) for x in blk.Q[j]))))
    return out, truncated


# -- stream statistics ----------------------------------------------------


@dataclass
class StreamStats:
    count: int
    truncated: bool
    by_length: dict[int, int]
    sup: dict[int, tuple[Fraction, int | None]]  # x -> (sup ratio, witness)
    max_width: int | None
    max_width_witness: int | None
    max_gap: int | None
    max_gap_witness: int | None
    Y: int
    oracle_pairs: int  # pairs recomputed via the exact word oracle

    def condition_a(self, Y=None) -> bool:
        x = self.Y if Y is None else Y
        return self.sup.get(x, (Fraction(0), None))[0] < 1

    def condition_b(self, Z: int, Y=None) -> bool:
        y = self.Y if Y is None else Y
        return self.sup.get(Z, (Fraction(0), None))[0] < Fraction(1, 4 * y + 2)


def _python_block_stats(ball, blk, xs, small_cap):
    """Exact per-pair statistics via the word oracle (non-dense balls)."""
    q = len(xs)
    out = {
        "consumed": 0, "untrusted": 0,
        "exc_max": np.zeros(q, dtype=np.int64),
        "exc_arg": np.full(q, -1, dtype=np.int64),
        "width_max": -1, "width_arg": -1,
        "gap_max": -1, "gap_arg": -1,
    }
    m = blk.length + 1
    for off in range(blk.limit):
        i, j = _pair_from_offset(blk, off)
        P, Q = blk.P[i], blk.Q[j]
        w = [ball.exact_distance(int(P[t]), int(Q[t])) for t in range(m)]
        gidx = blk.start + off
        wmax = max(w)
        if wmax > out["width_max"]:
            out["width_max"] = wmax
            out["width_arg"] = gidx
        for k, x in enumerate(xs):
            cnt = sum(1 for t in range(m) if w[t] > x)
            if cnt > out["exc_max"][k]:
                out["exc_max"][k] = cnt
                out["exc_arg"][k] = gidx
        gmax, last = 0, -1
        for t in range(m):
            if w[t] <= small_cap:
                if last >= 0 and t - last > gmax:
                    gmax = t - last
                last = t
        if gmax > out["gap_max"]:
            out["gap_max"] = gmax
            out["gap_arg"] = gidx
        out["consumed"] += 1
    return out


def ball_stats(ball: GraphBall, length_cap: int, count_cap=None, *,
               Y: int = 1, xs=None, jobs: int = 1):
    """Full statistics over the bigon stream of a ball.

    Returns (StreamStats, blocks); the block list lets callers materialize
    witness bands via band_at().
    """
    if xs is None:
        xs = list(range(length_cap + 1))
    xs_arr = np.asarray(sorted(xs), dtype=np.int64)
    small_cap = 2 * Y + 1
    blocks = list(iter_blocks(ball, length_cap, count_cap))
    dense = ball.dense_table()
    depth = np.ascontiguousarray(ball.depth)

    def run(blk: _Block):
        if dense is not None:
            res = block_pair_stats(dense, depth, ball.radius,
                                   np.ascontiguousarray(blk.P),
                                   np.ascontiguousarray(blk.Q),
                                   blk.triangular, blk.start, blk.limit,
                                   xs_arr, small_cap)
            if res["untrusted"] == 0:
                res["oracle"] = 0
                return res
        res = _python_block_stats(ball, blk, xs_arr.tolist(), small_cap)
        res["oracle"] = res["consumed"]
        return res

    if jobs > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, blocks))
    else:
        results = [run(blk) for blk in blocks]

    stats = StreamStats(0, False, {}, {int(x): (Fraction(0), None)
                                       for x in xs_arr},
                        None, None, None, None, Y, 0)
    for blk, res in zip(blocks, results):
        stats.count += res["consumed"]
        stats.oracle_pairs += res["oracle"]
        if blk.limit < blk.npairs:
            stats.truncated = True
        if res["consumed"]:
            stats.by_length[blk.length] = (
                stats.by_length.get(blk.length, 0) + res["consumed"]
            )
        for k, x in enumerate(xs_arr.tolist()):
            cnt = int(res["exc_max"][k])
            arg = int(res["exc_arg"][k])
            if arg >= 0:
                ratio = Fraction(cnt, blk.length)
                if ratio > stats.sup[x][0]:
                    stats.sup[x] = (ratio, arg)
        if res["width_max"] >= 0 and (stats.max_width is None
                                      or res["width_max"] > stats.max_width):
            stats.max_width = int(res["width_max"])
            stats.max_width_witness = int(res["width_arg"])
        if res["gap_max"] >= 0 and (stats.max_gap is None
                                    or res["gap_max"] > stats.max_gap):
            stats.max_gap = int(res["gap_max"])
            stats.max_gap_witness = int(res["gap_arg"])
    return stats, blocks


def sup_exceedance(ball: GraphBall, bigons, xs):
    """Spec-level op on a materialized stream: per x, (sup ratio, witness
    stream index or None)."""
    out = {int(x): (Fraction(0), None) for x in xs}
    for idx, band in enumerate(bigons):
        prof = width_profile(ball, band)
        for x in xs:
            _, ratio = exceedance(prof, x)
            if ratio > out[x][0]:
                out[x] = (ratio, idx)
    return out
