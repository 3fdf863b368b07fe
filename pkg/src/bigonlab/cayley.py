"""Finite graph balls: construction, trusted distances, geodesics, four-point
hyperbolicity estimates.

Built Cayley balls carry a *trust region* (``core_radius``): distances between
core vertices are provably exact because every true geodesic between vertices
of depth <= core_radius stays inside the ball whenever
``core_radius <= radius / 2`` (midpoint bound: a point p on a geodesic from u
to v satisfies d(base, p) <= core_radius + min(d(u,p), d(p,v)) <=
2 * core_radius).  The spec-default core is ``radius // 3``; larger cores up
to ``radius // 2`` may be requested explicitly.

A pair outside the core is still exact when
``min(depth(u), depth(v)) + d_ball(u, v) <= radius`` (the whole true geodesic
then fits in the ball); beyond that, certified Cayley balls fall back to an
exact bidirectional word-search oracle, and everything else is refused.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.csgraph import dijkstra

from ._kernels import four_point_double_delta
from .presentation import Presentation
from .words import free_reduce, invert
from .wordproblem import Strategy

DENSE_CAP = 4096
DEFAULT_VERTEX_CAP = 2_000_000


class TrustError(ValueError):
    """Raised for distance queries outside the trust region."""


class CapExceeded(RuntimeError):
    """Raised when ball construction exceeds its vertex cap."""


@dataclass(frozen=True)
class GeodesicPath:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


class GraphBall:
    """Immutable after construction; see module docstring for trust rules."""

    def __init__(self, labels, adj, base, radius, core_radius, certified,
                 kind, presentation=None, strategy=None, depth=None):
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.base = base
        self.radius = radius
        self.core_radius = core_radius
        self.certified = certified
        self.kind = kind
        self.presentation = presentation
        self.strategy = strategy
        self.n = len(labels)
        if isinstance(adj, tuple):
            lo, hi = adj                       # deduplicated edge arrays
            row = np.concatenate([lo, hi])
            col = np.concatenate([hi, lo])
            data = np.ones(row.size, dtype=np.int8)
            coo = coo_matrix((data, (row, col)), shape=(self.n, self.n))
            self.csr = coo.tocsr()
            self.csr.sort_indices()
        else:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for i, ns in enumerate(adj):
                indptr[i + 1] = indptr[i] + len(ns)
            indices = np.fromiter(
                (j for ns in adj for j in ns), dtype=np.int32,
                count=indptr[-1]
            )
            data = np.ones(indptr[-1], dtype=np.int8)
            self.csr = csr_matrix((data, indices, indptr),
                                  shape=(self.n, self.n))
        self.depth = self._bfs_row(base, None) if depth is None else depth
        self._dense = None
        self._rows: dict[int, np.ndarray] = {}
        self._core_rows = None
        self._core_pos = None
        self._sub = None
        self._oracle: dict[str, int] = {}

    def neighbors(self, u: int) -> np.ndarray:
        """Neighbor ids of u in increasing (shortlex) order."""
        return self.csr.indices[self.csr.indptr[u]:self.csr.indptr[u + 1]]

    # -- distance machinery -------------------------------------------------

    def _bfs_row(self, u: int, limit) -> np.ndarray:
        lim = np.inf if limit is None else limit
        row = dijkstra(self.csr, indices=u, unweighted=True, limit=lim)
        out = np.full(self.n, -1, dtype=np.int32)
        finite = np.isfinite(row)
        out[finite] = row[finite].astype(np.int32)
        return out

    def dense_table(self) -> np.ndarray | None:
        """All-pairs in-ball distances; only for balls up to DENSE_CAP."""
        if self.n > DENSE_CAP:
            return None
        if self._dense is None:
            d = dijkstra(self.csr, unweighted=True)
            self._dense = d.astype(np.int32)
        return self._dense

    def dist_row(self, u: int, limit=None) -> np.ndarray:
        """In-ball distances from u (value -1 beyond ``limit``)."""
        dense = self.dense_table()
        if dense is not None:
            return dense[u]
        cached = self._rows.get(u)
        if cached is not None and (cached[0] is None
                                   or (limit is not None and limit <= cached[0])):
            return cached[1]
        row = self._bfs_row(u, limit)
        self._rows[u] = (limit, row)
        return row

    def _subball(self):
        """Induced subgraph of depth <= 2 * core_radius, which contains every
        true geodesic between core vertices (midpoint bound).  Returns
        (subidx: global -> sub or -1, sub_csr)."""
        if self._sub is None:
            lim = min(self.radius, 2 * self.core_radius)
            ids = np.nonzero(self.depth <= lim)[0].astype(np.int32)
            subidx = np.full(self.n, -1, dtype=np.int32)
            subidx[ids] = np.arange(ids.size, dtype=np.int32)
            self._sub = (subidx, self.csr[ids][:, ids])
        return self._sub

    def _core_row_of(self, v: int) -> np.ndarray | None:
        """Truncated distance row from a core vertex, in subball coords."""
        if not self.in_core(v):
            return None
        if self._core_pos is None:
            self._core_pos = {u: a for a, u in enumerate(self.core_vertices())}
        return self.core_rows()[self._core_pos[v]]

    def _geodesic_row(self, v: int, d: int):
        """(row, idxmap) for backtracking geodesics of length d from v;
        idxmap is None when the row is indexed by global vertex ids."""
        if self.dense_table() is not None:
            return self.dense_table()[v], None
        if self.in_core(v) and d <= 2 * self.core_radius:
            return self._core_row_of(v), self._subball()[0]
        return self.dist_row(v, limit=d), None

    def ball_distance(self, u: int, v: int) -> int:
        """In-ball distance (an upper bound for the true distance)."""
        if self.dense_table() is None:
            # cheap path: the truncated core-rows table often already has it
            for a, bb in ((u, v), (v, u)):
                if self.in_core(a):
                    subidx = self._subball()[0]
                    if subidx[bb] >= 0:
                        d = int(self._core_row_of(a)[subidx[bb]])
                        if d >= 0:
                            return d
        d = int(self.dist_row(u)[v])
        if d < 0:
            raise TrustError("vertices not connected inside the ball")
        return d

    def in_core(self, u: int) -> bool:
        return int(self.depth[u]) <= self.core_radius

    def trusted(self, u: int, v: int) -> bool:
        """Whether the public trust rule declares dist(u, v) exact."""
        return self.kind == "graph" or (self.in_core(u) and self.in_core(v))

    def pair_exact(self, u: int, v: int) -> int | None:
        """Exact distance via in-ball evidence only, or None."""
        if self.kind == "graph":
            return self.ball_distance(u, v)
        if self.in_core(u) and self.in_core(v):
            return self.ball_distance(u, v)
        d = self.ball_distance(u, v)
        if min(int(self.depth[u]), int(self.depth[v])) + d <= self.radius:
            return d
        return None

    def exact_distance(self, u: int, v: int) -> int:
        """Exact distance, consulting the word oracle when the ball cannot
        certify the answer.  Requires a certified strategy off-core."""
        d = self.pair_exact(u, v)
        if d is not None:
            return d
        if self.kind != "cayley" or not self.certified:
            raise TrustError(
                "untrusted distance: endpoints outside the trust region "
                "and no certified word oracle is available"
            )
        return self._oracle_distance(u, v)

    def _oracle_distance(self, u: int, v: int) -> int:
        s = self.strategy
        diff = s.canonical_label(
            free_reduce(invert(self.labels[u]) + self.labels[v])
        )
        hit = self._oracle.get(diff)
        if hit is not None:
            return hit
        ub = self.ball_distance(u, v)  # always an upper bound
        d = _word_norm(s, self.presentation.letters, diff, ub)
        self._oracle[diff] = d
        return d

    # -- geodesics ----------------------------------------------------------

    def enumerate_geodesics(self, u: int, v: int, limit=None):
        """All geodesics u -> v, lexicographic in vertex-label order.

        Returns (paths, truncated).  Requires both endpoints in the core, so
        that every true geodesic stays inside the ball.
        """
        if not (self.trusted(u, v)):
            raise TrustError("geodesic enumeration requires core endpoints")
        d = self.ball_distance(u, v)
        if d == 0:
            return [GeodesicPath((u,))], False
        dv, idxmap = self._geodesic_row(v, d)
        paths: list[GeodesicPath] = []
        truncated = False
        stack = [u]

        def at(w: int) -> int:
            if idxmap is None:
                return dv[w]
            si = idxmap[w]
            return dv[si] if si >= 0 else -1

        def dfs(cur: int, togo: int) -> bool:
            nonlocal truncated
            if togo == 0:
                paths.append(GeodesicPath(tuple(stack)))
                if limit is not None and len(paths) >= limit:
                    truncated = True
                    return False
                return True
            for w in self.neighbors(cur):
                if at(w) == togo - 1:
                    stack.append(w)
                    ok = dfs(w, togo - 1)
                    stack.pop()
                    if not ok:
                        return False
            return True

        dfs(u, d)
        return paths, truncated

    def core_vertices(self) -> list[int]:
        return [i for i in range(self.n) if self.depth[i] <= self.core_radius]

    def core_distance_matrix(self) -> np.ndarray:
        """Exact distances between all core vertices (int32, core x core)."""
        core = np.asarray(self.core_vertices(), dtype=np.int64)
        dense = self.dense_table()
        if dense is not None:
            return dense[np.ix_(core, core)]
        subidx = self._subball()[0]
        return self.core_rows()[:, subidx[core]]

    def core_rows(self) -> np.ndarray:
        """Distances from every core vertex, truncated at 2 * core_radius
        (cached; rows ordered as core_vertices(), columns in subball coords
        for non-dense balls)."""
        if self._core_rows is None:
            core = np.asarray(self.core_vertices(), dtype=np.int64)
            dense = self.dense_table()
            if dense is not None:
                self._core_rows = dense[core]
            else:
                subidx, sub_csr = self._subball()
                raw = dijkstra(sub_csr, indices=subidx[core], unweighted=True,
                               limit=2 * self.core_radius)
                out = np.full(raw.shape, -1, dtype=np.int32)
                finite = np.isfinite(raw)
                out[finite] = raw[finite].astype(np.int32)
                self._core_rows = out
        return self._core_rows

    def rows_from(self, sources, limit) -> np.ndarray:
        """Batched truncated single-source distances (int32, -1 = beyond)."""
        raw = dijkstra(self.csr, indices=sources, unweighted=True, limit=limit)
        out = np.full(raw.shape, -1, dtype=np.int32)
        finite = np.isfinite(raw)
        out[finite] = raw[finite].astype(np.int32)
        return out

    def path_word(self, path: GeodesicPath) -> str:
        """Generator word spelled by a path (Cayley balls only)."""
        if self.kind != "cayley":
            raise TrustError("path words exist only for Cayley balls")
        s = self.strategy
        out = []
        for a, b in zip(path.vertices, path.vertices[1:]):
            la, lb = self.labels[a], self.labels[b]
            for x in self.presentation.letters:
                if s.extend_label(la, x) == lb:
                    out.append(x)
                    break
            else:
                raise ValueError("adjacent vertices differ by no generator")
        return "".join(out)


def _word_norm(s: Strategy, letters: str, g: str, ub: int) -> int:
    """Group norm |g| by bidirectional canonical-label search, using the
    known upper bound ``ub`` to terminate."""
    if g == "":
        return 0
    side0 = {"": 0}
    side1 = {g: 0}
    front0, front1 = [""], [g]
    d0 = d1 = 0
    best = ub
    while front0 and front1 and d0 + d1 + 1 < best:
        if len(front0) <= len(front1):
            src, other, d = front0, side1, d0
            dst = side0
            d0 += 1
            nd = d0
        else:
            src, other, d = front1, side0, d1
            dst = side1
            d1 += 1
            nd = d1
        nxt = []
        for w in src:
            for x in letters:
                y = s.extend_label(w, x)
                if y in dst:
                    continue
                dst[y] = nd
                nxt.append(y)
                if y in other:
                    cand = nd + other[y]
                    if cand < best:
                        best = cand
        if src is front0:
            front0 = nxt
        else:
            front1 = nxt
    return best


def build_ball(p: Presentation, s: Strategy, radius: int, *,
               vertex_cap: int = DEFAULT_VERTEX_CAP,
               allow_uncertified: bool = False,
               core_radius: int | None = None) -> GraphBall:
    """Breadth-first Cayley ball of the given radius around the identity."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if not s.certified and not allow_uncertified:
        raise TrustError(
            "strategy is uncertified; pass allow_uncertified=True to proceed"
        )
    if core_radius is None:
        core_radius = radius // 3
    elif not 0 <= core_radius <= radius // 2:
        raise ValueError(
            f"core_radius must be in [0, radius//2] = [0, {radius // 2}]"
        )
    letters = p.letters
    root = s.canonical_label("")
    labels = [root]
    index = {root: 0}
    dep = array("i", [0])
    ei = array("i")
    ej = array("i")
    layer = [0]
    for _depth in range(1, radius + 1):
        nxt = []
        for i in layer:
            w = labels[i]
            for x in letters:
                lab = s.extend_label(w, x)
                j = index.get(lab)
                if j is None:
                    j = len(labels)
                    if j >= vertex_cap:
                        raise CapExceeded(
                            f"vertex cap {vertex_cap} exceeded at depth "
                            f"{_depth} ({j} vertices so far)"
                        )
                    labels.append(lab)
                    index[lab] = j
                    dep.append(_depth)
                    nxt.append(j)
                ei.append(i)
                ej.append(j)
        layer = nxt
    # boundary closure: edges between two depth == radius vertices
    for i in layer:
        w = labels[i]
        for x in letters:
            j = index.get(s.extend_label(w, x))
            if j is not None:
                ei.append(i)
                ej.append(j)

    # canonical vertex order: shortlex on labels
    tr = str.maketrans(letters, "".join(chr(48 + k) for k in range(len(letters))))
    order = sorted(range(len(labels)), key=lambda i: (len(labels[i]),
                                                      labels[i].translate(tr)))
    rank = np.empty(len(labels), dtype=np.int32)
    for r, i in enumerate(order):
        rank[i] = r
    new_labels = [labels[i] for i in order]
    a = rank[np.frombuffer(ei, dtype=np.int32)]
    b = rank[np.frombuffer(ej, dtype=np.int32)]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    keep = lo != hi
    lo, hi = lo[keep], hi[keep]
    n = len(labels)
    enc = np.unique(lo.astype(np.int64) * n + hi)
    lo, hi = (enc // n).astype(np.int32), (enc % n).astype(np.int32)
    depth = np.empty(n, dtype=np.int32)
    depth[rank] = np.frombuffer(dep, dtype=np.int32)
    return GraphBall(new_labels, (lo, hi), rank[0], radius, core_radius,
                     s.certified, "cayley", p, s, depth)


def ingest_graph(text: str, base: int) -> GraphBall:
    """Graph ball from edge-list text (one ``u v`` pair per line)."""
    edges = set()
    vertices = set()
    for ln in text.splitlines():
        ln = ln.split("#")[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if u < 0 or v < 0:
            raise ValueError(f"negative vertex id in line {ln!r}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in edges:
            raise ValueError(f"duplicate edge {e[0]} {e[1]}")
        edges.add(e)
        vertices.add(u)
        vertices.add(v)
    if not edges:
        raise ValueError("empty edge list")
    if base not in vertices:
        raise ValueError(f"base vertex {base} not present in the edge list")
    ids = sorted(vertices)
    ren = {v: i for i, v in enumerate(ids)}
    nbr: list[list[int]] = [[] for _ in ids]
    for u, v in sorted(edges):
        nbr[ren[u]].append(ren[v])
        nbr[ren[v]].append(ren[u])
    for ns in nbr:
        ns.sort()
    # connectivity from base
    seen = {ren[base]}
    stack = [ren[base]]
    while stack:
        u = stack.pop()
        for w in nbr[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(ids):
        missing = ids[min(set(range(len(ids))) - seen)]
        raise ValueError(f"vertex {missing} is not connected to the base")
    ball = GraphBall(ids, nbr, ren[base], 0, 0, True, "graph")
    radius = int(ball.depth.max())
    ball.radius = radius
    ball.core_radius = radius // 3
    return ball


def distance(b: GraphBall, u: int, v: int, *, trust_override: bool = False) -> int:
    """Public distance op with the spec trust rule (core endpoints only)."""
    if not b.trusted(u, v) and not trust_override:
        raise TrustError(
            "untrusted distance: both endpoints must lie within the core "
            "radius (pass trust_override=True for the in-ball upper bound)"
        )
    return b.ball_distance(u, v)


def enumerate_geodesics(b: GraphBall, u: int, v: int, limit=None):
    return b.enumerate_geodesics(u, v, limit)


def gromov_delta(b: GraphBall, sample="all") -> Fraction:
    """Four-point hyperbolicity constant over the sample (exact rational)."""
    if sample == "all":
        # ingested graphs are trusted everywhere; built balls only on core
        mat = b.dense_table() if b.kind == "graph" else None
        if mat is None:
            mat = b.core_distance_matrix()
        dd = four_point_double_delta(np.ascontiguousarray(mat))
        return Fraction(dd, 2)
    quads = list(sample)
    if not quads:
        raise ValueError("empty sample")
    best = 0
    for quad in quads:
        if len(quad) != 4:
            raise ValueError(f"quadruple expected, got {quad!r}")
        for x in quad:
            if not b.in_core(x) and b.kind != "graph":
                raise TrustError(f"vertex {x} outside the trust region")
        x, y, z, w = quad
        a = b.exact_distance(x, y) + b.exact_distance(z, w)
        c = b.exact_distance(x, z) + b.exact_distance(y, w)
        e = b.exact_distance(x, w) + b.exact_distance(y, z)
        s1, s2, _ = sorted((a, c, e), reverse=True)
        best = max(best, s1 - s2)
    return Fraction(best, 2)
