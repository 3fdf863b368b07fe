"""Bounded exact combinatorial area, bigon area ratios, and segment selection.

The area of a null-homotopic word is the minimal number of conjugated
relators in a product expressing it in the free group.  Each such relator
corresponds to one *move*: insert one symmetrized relator at one position of
the freely reduced word, then freely reduce.  Minimal move count is found by
A* over freely reduced words with the admissible heuristic
ceil(len / max relator length); the first goal pop is therefore the exact
minimum among derivations whose intermediate words stay within ``length_cap``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .bigons import Band
from .cayley import GraphBall
from .presentation import Presentation, symmetrize
from .words import free_reduce, invert

NODE_BUDGET = 2_000_000


class AreaError(ValueError):
    pass


@dataclass(frozen=True)
class AreaResult:
    word: str
    area: int | None            # None encodes "unknown"
    status: str                 # exact | upper_bound | exhausted
    length_cap: int
    area_cap: int
    witness: tuple[tuple[int, str], ...] | None

    def to_json_dict(self) -> dict:
        return {
            "word": self.word,
            "area": "unknown" if self.area is None else self.area,
            "status": self.status,
            "length_cap": self.length_cap,
            "area_cap": self.area_cap,
            "witness": (None if self.witness is None
                        else [[i, r] for i, r in self.witness]),
        }


def splice(w: str, i: int, r: str) -> str:
    """Insert r into w at position i, freely reducing around the seams."""
    out = list(w[:i])
    for c in r + w[i:]:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def replay_witness(word: str, witness) -> str:
    """Apply recorded (position, relator) moves; returns the final word."""
    w = free_reduce(word)
    for i, r in witness:
        if not 0 <= i <= len(w):
            raise AreaError(f"witness position {i} out of range for {w!r}")
        w = splice(w, i, r)
    return w


def area(p: Presentation, w: str, length_cap: int, area_cap: int,
         *, node_budget: int = NODE_BUDGET) -> AreaResult:
    """Minimal relator-insertion count taking w to the empty word.

    Status ``exact``: a minimal within-cap derivation was found (witness
    replays to the empty word).  ``upper_bound``: the node budget stopped
    the search after some derivation was seen but before minimality was
    proved.  ``exhausted``: no derivation found within the caps.
    """
    if not p.symmetrized:
        p = symmetrize(p)
    w0 = free_reduce(w)
    if len(w0) > length_cap:
        raise AreaError(
            f"reduced word length {len(w0)} exceeds length_cap {length_cap}"
        )
    if not w0:
        return AreaResult(w, 0, "exact", length_cap, area_cap, ())
    if not p.relators:
        return AreaResult(w, None, "exhausted", length_cap, area_cap, None)
    rels = sorted(p.relators, key=p.shortlex())
    lmax = max(len(r) for r in rels)
    came: dict[str, tuple[int, str | None, tuple[int, str] | None]] = {
        w0: (0, None, None)
    }
    heap = [(-(-len(w0) // lmax), 0, w0)]
    best_goal: int | None = None
    expanded = 0
    while heap:
        f, g, cur = heapq.heappop(heap)
        if came[cur][0] != g:
            continue
        if cur == "":
            moves = []
            s = cur
            while True:
                _, prev, mv = came[s]
                if prev is None:
                    break
                moves.append(mv)
                s = prev
            return AreaResult(w, g, "exact", length_cap, area_cap,
                              tuple(reversed(moves)))
        if expanded >= node_budget:
            if best_goal is not None:
                return AreaResult(w, best_goal, "upper_bound",
                                  length_cap, area_cap, None)
            return AreaResult(w, None, "exhausted", length_cap, area_cap,
                              None)
        expanded += 1
        if g >= area_cap:
            continue
        ng = g + 1
        for i in range(len(cur) + 1):
            for r in rels:
                nw = splice(cur, i, r)
                if len(nw) > length_cap:
                    continue
                if nw in came and came[nw][0] <= ng:
                    continue
                came[nw] = (ng, cur, (i, r))
                if nw == "" and (best_goal is None or ng < best_goal):
                    best_goal = ng
                heapq.heappush(heap, (ng + (-(-len(nw) // lmax)), ng, nw))
    return AreaResult(w, None, "exhausted", length_cap, area_cap, None)


def _connecting_letter(p: Presentation, strategy, u_word: str,
                       v_word: str) -> str:
    """Generator letter c with u_word * c = v_word in the group, or ''."""
    if strategy.equal(u_word, v_word):
        return ""
    for c in p.letters:
        if strategy.equal(u_word + c, v_word):
            return c
    raise AreaError("band endpoints are not within distance 1: not a bigon")


def closed_boundary_word(p: Presentation, strategy, w0: str, w1: str) -> str:
    """Boundary word of the bigon with co-initial sides w0, w1.

    Traverses side1, the connecting edge at the far end (if the endpoints
    differ), then side0 backwards.
    """
    c_end = _connecting_letter(p, strategy, w1, w0)
    return free_reduce(w1 + c_end + invert(w0))


def bigon_area(p: Presentation, bigon: Band, ball: GraphBall,
               length_cap: int | None = None,
               area_cap: int | None = None) -> AreaResult:
    """Area of the closed boundary word of a Cayley-graph bigon."""
    if ball.strategy is None:
        raise AreaError("bigon_area needs a presentation-built ball")
    w0 = ball.path_word(bigon.side0)
    w1 = ball.path_word(bigon.side1)
    s0 = ball.labels[bigon.side0.vertices[0]]
    s1 = ball.labels[bigon.side1.vertices[0]]
    c_start = _connecting_letter(p, ball.strategy, s0, s1)
    closed = free_reduce(c_start + w1 +
                         _connecting_letter(p, ball.strategy, s1 + w1,
                                            s0 + w0)
                         + invert(w0))
    if length_cap is None:
        length_cap = max(16, len(closed) + max(
            (len(r) for r in p.relators), default=0))
    if area_cap is None:
        area_cap = max(16, (max(len(closed), 2) // 2) ** 2)
    return area(p, closed, length_cap, area_cap)


@dataclass(frozen=True)
class RatioTable:
    rows: tuple[tuple[int, int, Fraction], ...]   # (|beta|, a(beta), ratio)
    max_ratio: Fraction | None
    max_per_length: tuple[tuple[int, Fraction], ...]
    excluded: int                                  # non-exact areas

    def to_json_dict(self) -> dict:
        def fmt(r: Fraction) -> str:
            return (str(r.numerator) if r.denominator == 1
                    else f"{r.numerator}/{r.denominator}")

        return {
            "rows": [[l, a, fmt(r)] for l, a, r in self.rows],
            "max_ratio": (None if self.max_ratio is None
                          else fmt(self.max_ratio)),
            "max_per_length": [[l, fmt(r)] for l, r in self.max_per_length],
            "excluded": self.excluded,
        }


def boundary_class(w: str) -> str:
    """Canonical representative of w up to rotation and inversion.

    Area is invariant under both (conjugation invariance and symmetry of
    the relator set), so it is memoized per class.
    """
    cands = [x[i:] + x[:i] for x in (w, invert(w))
             for i in range(len(x) or 1)]
    return min(cands)


def ratio_stats(p: Presentation, bigons, ball: GraphBall,
                length_cap: int | None = None,
                area_cap: int | None = None, jobs: int = 1) -> RatioTable:
    """Per-bigon (|beta|, a(beta), a/|beta|) table with running maxima.

    Areas are memoized on the boundary word's rotation/inversion class
    (translation invariant); non-exact results are excluded from the
    maxima and counted.
    """
    items = []
    for band in bigons:
        w0 = ball.path_word(band.side0)
        w1 = ball.path_word(band.side1)
        closed = closed_boundary_word(p, ball.strategy, w0, w1)
        items.append((band.length, boundary_class(closed)))

    def caps(word: str) -> tuple[int, int]:
        lc = length_cap if length_cap is not None else \
            max(16, len(word) + max((len(r) for r in p.relators),
                                    default=0))
        ac = area_cap if area_cap is not None else \
            max(16, (max(len(word), 2) // 2) ** 2)
        return lc, ac

    classes = sorted({cls for _, cls in items})
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = ex.map(lambda c: area(p, c, *caps(c)), classes)
            cache = dict(zip(classes, results))
    else:
        cache = {c: area(p, c, *caps(c)) for c in classes}

    rows, excluded = [], 0
    per_len: dict[int, Fraction] = {}
    best: Fraction | None = None
    for length, cls in items:
        res = cache[cls]
        if res.status != "exact":
            excluded += 1
            continue
        ratio = Fraction(res.area, length)
        rows.append((length, res.area, ratio))
        if best is None or ratio > best:
            best = ratio
        if length not in per_len or ratio > per_len[length]:
            per_len[length] = ratio
    return RatioTable(tuple(rows), best,
                      tuple(sorted(per_len.items())), excluded)


def omega_estimate(p: Presentation, samples, ball: GraphBall,
                   length_cap: int, area_cap: int) -> Fraction:
    """min over samples of area(psi) / (d0 * d1), skipping zero products.

    Each sample is (closed word, (c0, c1, c2, c3)) with corner positions
    splitting the word into four arcs; d0 and d1 are the distances between
    the opposite arc pairs, measured between vertices of the closed path
    traced from the ball base (every prefix must stay inside the ball).
    An empirical upper bound for the best box-inequality constant omega.
    """
    if ball.strategy is None:
        raise AreaError("omega_estimate needs a presentation-built ball")
    best: Fraction | None = None
    for word, corners in samples:
        w = free_reduce(word)
        if len(corners) != 4 or list(corners) != sorted(corners) \
                or corners[-1] > len(w):
            raise AreaError(f"bad corner positions {corners} for {w!r}")
        verts = []
        lab = ball.labels[ball.base]
        for i in range(len(w) + 1):
            idx = ball.index.get(ball.strategy.canonical_label(lab + w[:i]))
            if idx is None:
                raise AreaError(
                    f"closed path leaves the ball at prefix {w[:i]!r}"
                )
            verts.append(idx)
        c0, c1, c2, c3 = corners
        arcs = [verts[c0:c1 + 1], verts[c1:c2 + 1], verts[c2:c3 + 1],
                verts[c3:] + verts[:c0 + 1]]
        d0 = min(ball.exact_distance(x, y) for x in arcs[0] for y in arcs[2])
        d1 = min(ball.exact_distance(x, y) for x in arcs[1] for y in arcs[3])
        if d0 * d1 == 0:
            continue
        res = area(p, w, length_cap, area_cap)
        if res.status != "exact":
            continue
        ratio = Fraction(res.area, d0 * d1)
        if best is None or ratio < best:
            best = ratio
    if best is None:
        raise AreaError("no usable samples (all skipped or non-exact)")
    return best


def select_separated(segments, a) -> list[tuple[Fraction, Fraction]]:
    """Greedy separated subfamily with total length >= total/3.

    Repeatedly keep a maximal-length segment and discard every segment
    within distance <= a of it.  Input: disjoint open intervals, each of
    length > a; output pairwise distances are > a.
    """
    a = Fraction(a)
    if a <= 0:
        raise ValueError("separation parameter must be positive")
    segs = sorted((Fraction(lo), Fraction(hi)) for lo, hi in segments)
    for lo, hi in segs:
        if hi - lo < a:
            raise ValueError(
                f"segment ({lo}, {hi}) is shorter than {a}"
            )
    for (_, h1), (l2, _) in zip(segs, segs[1:]):
        if l2 < h1:
            raise ValueError("segments must be pairwise disjoint")
    chosen: list[tuple[Fraction, Fraction]] = []
    pool = segs
    while pool:
        # maximal length; leftmost among ties for determinism
        pick = max(pool, key=lambda s: (s[1] - s[0], -s[0]))
        chosen.append(pick)
        pool = [s for s in pool
                if s is not pick
                and not (max(pick[0], s[0]) - min(pick[1], s[1]) <= a)]
    chosen.sort()
    return chosen
