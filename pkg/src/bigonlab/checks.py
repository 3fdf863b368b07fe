"""Empirical invariant suites shared by the test suite and the CLI.

Each check exhaustively (or, for the segment suite, randomly) verifies one
of the structural facts the hyperbolicity criteria rest on, over finite
enumerated data, and reports how many instances were checked and how many
violated the claimed property.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .bigons import (Band, StreamStats, dense_values, width_profile)
from .cayley import GeodesicPath, GraphBall
from .constants import ConstantBundle
from .vkarea import select_separated


@dataclass
class CheckReport:
    name: str
    checked: int
    violations: int
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked,
                "violations": self.violations, "passed": self.passed,
                "detail": self.detail}


# -- width subadditivity ---------------------------------------------------


def subadditivity_check(ball: GraphBall) -> CheckReport:
    """Exceedance-set subadditivity over equal-length geodesic triples.

    For geodesics alpha1, alpha2, alpha3 of a common length and thresholds
    A, B: every index where d(alpha1, alpha3) > A + B must have
    d(alpha1, alpha2) > A or d(alpha2, alpha3) > B.  Exhaustive over all
    geodesics between core vertex pairs, all triples, all thresholds up to
    the maximum observed width.
    """
    by_len: dict[int, list[tuple[int, ...]]] = {}
    core = ball.core_vertices()
    for i, u in enumerate(core):
        for v in core[i + 1:]:
            paths, truncated = ball.enumerate_geodesics(u, v)
            assert not truncated
            for path in paths:
                by_len.setdefault(path.length, []).append(path.vertices)
    checked = violations = 0
    for length, paths in sorted(by_len.items()):
        g = len(paths)
        if g < 3:
            continue
        P = np.array(paths, dtype=np.int64)
        W = np.empty((g, g, length + 1), dtype=np.int64)
        memo: dict[tuple[int, int], int] = {}
        for i in range(g):
            W[i, i] = 0
            for j in range(i + 1, g):
                for t in range(length + 1):
                    key = (min(P[i, t], P[j, t]), max(P[i, t], P[j, t]))
                    d = memo.get(key)
                    if d is None:
                        d = ball.exact_distance(int(P[i, t]), int(P[j, t]))
                        memo[key] = d
                    W[i, j, t] = W[j, i, t] = d
        wmax = int(W.max())
        bits = (1 << np.arange(length + 1, dtype=np.int64))
        for A in range(wmax + 1):
            EA = ((W > A) * bits).sum(axis=2)          # (g, g) bitmasks
            for B in range(wmax + 1):
                EB = ((W > B) * bits).sum(axis=2)
                EC = ((W > A + B) * bits).sum(axis=2)
                for j in range(g):
                    cover = EA[:, j][:, None] | EB[j, :][None, :]
                    violations += int(np.count_nonzero(EC & ~cover))
                checked += g * g * g
    return CheckReport("subadditivity", checked, violations)


# -- rank machinery --------------------------------------------------------


def _band_rank(ball: GraphBall, band: Band, p: int, t: int, t2: int) -> int:
    return t2 - t + p - ball.exact_distance(band.side0.vertices[t],
                                            band.side1.vertices[t2])


def rank_checks(ball: GraphBall, bigons, Y: int,
                theta_hat: Fraction) -> tuple[CheckReport, CheckReport,
                                              CheckReport]:
    """Rank monotonicity, rank bounds, and the rank-decay disjunction.

    * monotonicity: for nested p-equilateral segments J subset I of a fork,
      rk I >= rk J;
    * bounds: 0 <= rk <= 1 + p for every p-equilateral segment;
    * decay: for consecutive p-equilateral segments J-, J, J+ with
      rk J- = rk J+ = m and |J| >= theta_hat * |I| + (1 + theta_hat) * p
      (I the concatenation), either J contains a small jumper (width
      <= 2Y+1) or rk I >= m + 1.

    Forks are viewed as ordered bands both ways.
    """
    small_cap = 2 * Y + 1
    mono = CheckReport("rank_monotonicity", 0, 0)
    bounds = CheckReport("rank_bounds", 0, 0)
    decay = CheckReport("rank_decay", 0, 0)
    for bigon in bigons:
        w = width_profile(ball, bigon).values
        for band in (bigon, bigon.swapped()):
            jumper_sets: dict[int, list[int]] = {}
            for i, v in enumerate(w):
                jumper_sets.setdefault(v, []).append(i)
            for p, js in jumper_sets.items():
                if len(js) < 2:
                    continue
                rk: dict[tuple[int, int], int] = {}
                for t, t2 in combinations(js, 2):
                    r = _band_rank(ball, band, p, t, t2)
                    rk[(t, t2)] = r
                    bounds.checked += 1
                    if not 0 <= r <= 1 + p:
                        bounds.violations += 1
                for t, t2 in rk:
                    for s, s2 in rk:
                        if (t, t2) != (s, s2) and t <= s and s2 <= t2:
                            mono.checked += 1
                            if rk[(t, t2)] < rk[(s, s2)]:
                                mono.violations += 1
                for t0, t1, t2, t3 in combinations(js, 4):
                    m = rk[(t0, t1)]
                    if rk[(t2, t3)] != m:
                        continue
                    lhs = Fraction(t2 - t1)
                    rhs = theta_hat * (t3 - t0) + (1 + theta_hat) * p
                    if lhs < rhs:
                        continue
                    decay.checked += 1
                    has_small = any(w[i] <= small_cap
                                    for i in range(t1, t2 + 1))
                    if not (has_small or rk[(t0, t3)] >= m + 1):
                        decay.violations += 1
    return mono, bounds, decay


# -- dense values ----------------------------------------------------------


def word_vertex(ball: GraphBall, word: str) -> int:
    """Ball vertex reached from the base by ``word`` (KeyError if outside)."""
    return ball.index[ball.strategy.canonical_label(word)]


def word_path(ball: GraphBall, start: str, word: str) -> GeodesicPath:
    """Path traced from the vertex at ``start`` along ``word``."""
    verts = tuple(word_vertex(ball, start + word[:i])
                  for i in range(len(word) + 1))
    return GeodesicPath(verts)


def lattice_band_family(ball: GraphBall, lengths, offsets) -> list[Band]:
    """Parallel/offset straight-line band family for the grid presentation:
    side0 runs along a^l from the base, side1 along a^l from b^j (parallel,
    constant width) and from a^j (offset along the same line)."""
    bands = []
    for l in lengths:
        w = "a" * l
        side0 = word_path(ball, "", w)
        for j in offsets:
            bands.append(Band(side0, word_path(ball, "b" * j, w)))
            bands.append(Band(side0, word_path(ball, "a" * j, w)))
    return bands


def dense_value_check(ball: GraphBall, bands,
                      bundle: ConstantBundle) -> CheckReport:
    """Dense-value conclusion on every band meeting the lemma hypotheses:
    length >= R, endpoint widths <= 2Y+1, and the E-condition
    #w^{-1}(>Z) < epsilon * |band|; then dense_values with the bundle's
    (D, rho) over the full index range is nonempty."""
    small_cap = 2 * bundle.Y + 1
    rep = CheckReport("dense_value", 0, 0, {"candidates": 0})
    for band in bands:
        rep.detail["candidates"] += 1
        l = band.length
        if l < bundle.R:
            continue
        prof = width_profile(ball, band)
        w = prof.values
        if w[0] > small_cap or w[l] > small_cap:
            continue
        if sum(1 for v in w if v > bundle.Z) >= bundle.epsilon * l:
            continue
        rep.checked += 1
        if not dense_values(prof, (0, l), bundle.D, bundle.rho):
            rep.violations += 1
    return rep


# -- Theorem-1 conclusion --------------------------------------------------


def gap_vs_C_check(stats: StreamStats,
                   bundle: ConstantBundle) -> CheckReport:
    """When the measured A and B verdicts are both positive, every bigon's
    max small-jumper gap must be <= C (expected with enormous slack)."""
    rep = CheckReport("gap_vs_C", 0, 0)
    a = stats.condition_a(bundle.Y)
    b = stats.condition_b(bundle.Z, bundle.Y)
    rep.detail["condition_a"] = a
    rep.detail["condition_b"] = b
    if not (a and b) or stats.max_gap is None:
        rep.detail["applicable"] = False
        return rep
    rep.detail["applicable"] = True
    rep.checked = 1
    if not bundle.gap_leq_C(stats.max_gap):
        rep.violations = 1
    return rep


# -- segment-selection lemma ----------------------------------------------


def _pair_gap(s, t) -> Fraction:
    return max(t[0] - s[1], s[0] - t[1], Fraction(0))


def segment_lemma_suite(trials: int = 1000, seed: int = 0) -> CheckReport:
    """Randomized validation of the greedy separated-subfamily selection.

    Each trial draws <= 6 disjoint rational segments of length >= a and
    verifies: the greedy output is a subset with pairwise distances > a and
    total length >= 1/3 of the input total, and never beats the exhaustive
    optimum.
    """
    rng = random.Random(seed)
    rep = CheckReport("segment_lemma", 0, 0)
    for _ in range(trials):
        a = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        n = rng.randint(1, 6)
        segs = []
        x = Fraction(rng.randint(0, 4), rng.randint(1, 3))
        for _k in range(n):
            length = a + Fraction(rng.randint(0, 8), rng.randint(1, 4))
            segs.append((x, x + length))
            x += length + Fraction(rng.randint(0, 8), rng.randint(1, 4))
        total = sum(hi - lo for lo, hi in segs)
        chosen = select_separated(segs, a)
        ok = set(chosen) <= set(segs)
        ok &= all(_pair_gap(s, t) > a for s, t in combinations(chosen, 2))
        got = sum(hi - lo for lo, hi in chosen)
        ok &= 3 * got >= total
        best = Fraction(0)
        for r in range(1, n + 1):
            for sub in combinations(segs, r):
                if all(_pair_gap(s, t) > a
                       for s, t in combinations(sub, 2)):
                    best = max(best, sum(hi - lo for lo, hi in sub))
        ok &= got <= best and 3 * best >= total
        rep.checked += 1
        if not ok:
            rep.violations += 1
    return rep
