from fractions import Fraction

import numpy as np
import pytest

from bigonlab.cayley import (CapExceeded, TrustError, build_ball, distance,
                             enumerate_geodesics, gromov_delta, ingest_graph)
from bigonlab.wordproblem import auto_strategy


def _vid(ball, word):
    return ball.index[ball.strategy.canonical_label(word)]


def test_ball_sizes(f2, z2, surface, z2_strategy, surface_strategy):
    assert build_ball(f2, auto_strategy(f2), 2).n == 17
    assert build_ball(z2, z2_strategy, 2).n == 13
    s4 = build_ball(surface, surface_strategy, 4)
    assert s4.n == 3193
    assert int((s4.depth == 4).sum()) == 2736  # 8 distance-4 double spellings


def test_vertex_order_is_shortlex(z2_ball9):
    b = z2_ball9
    assert b.labels[0] == ""
    assert b.base == 0
    key = b.presentation.shortlex()
    assert b.labels == sorted(b.labels, key=key)


def test_distance_trust_rule(z2_ball9):
    b = z2_ball9  # radius 9, core 3
    u, v = _vid(b, "a"), _vid(b, "b")
    assert distance(b, u, v) == 2
    far = _vid(b, "aaaabbbb")  # depth 8, off-core
    with pytest.raises(TrustError):
        distance(b, b.base, far)
    assert distance(b, b.base, far, trust_override=True) == 8
    assert b.exact_distance(b.base, far) == 8


def test_enumerate_geodesics(z2_ball9):
    b = z2_ball9
    paths, truncated = enumerate_geodesics(b, b.base, _vid(b, "aab"))
    assert not truncated
    assert [b.path_word(p) for p in paths] == ["aab", "aba", "baa"]
    paths, truncated = enumerate_geodesics(b, b.base, _vid(b, "aab"),
                                           limit=2)
    assert truncated and len(paths) == 2


def test_geodesics_refused_off_core(z2_ball9):
    far = _vid(z2_ball9, "aabb")  # depth 4 > core 3
    with pytest.raises(TrustError):
        z2_ball9.enumerate_geodesics(z2_ball9.base, far)


def test_core_radius_override(z2, z2_strategy):
    b = build_ball(z2, z2_strategy, 8, core_radius=4)
    assert b.core_radius == 4
    with pytest.raises(ValueError):
        build_ball(z2, z2_strategy, 8, core_radius=5)
    assert build_ball(z2, z2_strategy, 9).core_radius == 3  # default r//3


def test_vertex_cap(z2, z2_strategy):
    with pytest.raises(CapExceeded):
        build_ball(z2, z2_strategy, 9, vertex_cap=50)


def test_exact_distance_oracle_surface(surface_ball4):
    b = surface_ball4
    u, v = _vid(b, "abab"), _vid(b, "dcdc")
    # both endpoints at depth 4 in a radius-4 ball: only the word oracle
    # can certify this distance
    assert b.exact_distance(u, v) == 8


def test_gromov_delta(z2_ball9, f2):
    assert gromov_delta(z2_ball9) == Fraction(2)
    b = build_ball(f2, auto_strategy(f2), 6)
    assert gromov_delta(b) == 0


def test_gromov_delta_sample(z2_ball9):
    b = z2_ball9
    core = b.core_vertices()
    quads = [tuple(core[i:i + 4]) for i in range(0, 12, 4)]
    d = gromov_delta(b, sample=quads)
    assert Fraction(0) <= d <= gromov_delta(b)
    with pytest.raises(ValueError):
        gromov_delta(b, sample=[])
    far = b.n - 1  # deepest vertex, outside the core
    with pytest.raises(TrustError):
        gromov_delta(b, sample=[(far, 0, 1, 2)])


def test_ingest_graph_cycle():
    text = "0 1\n1 2\n2 3\n3 0  # square\n"
    b = ingest_graph(text, 0)
    assert b.n == 4 and b.kind == "graph" and b.certified
    assert b.radius == 2
    assert b.trusted(0, 3)  # graphs are trusted everywhere
    assert b.exact_distance(0, 2) == 2
    assert gromov_delta(b) == Fraction(1)


@pytest.mark.parametrize("text,base,err", [
    ("0 0", 0, "self-loop"),
    ("0 1\n1 0", 0, "duplicate"),
    ("0 1\n2 3", 0, "not connected"),
    ("0 1 2", 0, "bad edge"),
    ("0 1", 5, "base vertex"),
    ("", 0, "empty"),
])
def test_ingest_graph_errors(text, base, err):
    with pytest.raises(ValueError, match=err):
        ingest_graph(text, base)


def test_dense_and_row_agreement(z2_ball9):
    b = z2_ball9
    dense = b.dense_table()
    assert dense is not None
    row = b._bfs_row(b.base, None)
    assert np.array_equal(dense[b.base], row)
    assert np.array_equal(b.depth, dense[b.base])


def test_core_distance_matrix_symmetric(z2_ball9):
    m = z2_ball9.core_distance_matrix()
    assert np.array_equal(m, m.T)
    assert (np.diag(m) == 0).all()
