import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mutvis import (
    InputError,
    ProductGraph,
    Vertex,
    circ_dist,
    circ_interval,
    dist,
    interval,
    lin_interval,
)
from oracles import all_distances, geodesic_members


@pytest.mark.parametrize("n,k,s,expected", [(0, 0, 7, 0), (0, 5, 7, 2), (0, 2, 4, 2)])
def test_circ_dist_examples(n, k, s, expected):
    assert circ_dist(n, k, s) == expected


@pytest.mark.parametrize("args", [(7, 0, 7), (-1, 0, 5), (0, 0, 2)])
def test_circ_dist_rejects_bad_input(args):
    with pytest.raises(InputError):
        circ_dist(*args)


@given(st.integers(3, 40).flatmap(lambda s: st.tuples(st.integers(0, s - 1), st.integers(0, s - 1), st.just(s))))
def test_circ_dist_symmetric_and_bounded(args):
    n, k, s = args
    assert circ_dist(n, k, s) == circ_dist(k, n, s) <= s // 2


@pytest.mark.parametrize("k,n,expected", [(2, 5, {2, 3, 4, 5}), (5, 2, {2, 3, 4, 5}), (3, 3, {3})])
def test_lin_interval(k, n, expected):
    assert set(lin_interval(k, n)) == expected


def test_circ_interval_examples():
    assert set(circ_interval(0, 2, 4)) == {0, 1, 2, 3}
    assert set(circ_interval(1, 3, 7)) == {1, 2, 3}


def test_circ_interval_wrapping_arc_matches_enumeration():
    # every m with |0-m| + |m-5| == |0-5| on C7
    s = 7
    expected = {m for m in range(s) if circ_dist(0, m, s) + circ_dist(m, 5, s) == circ_dist(0, 5, s)}
    assert expected == {5, 6, 0}
    assert set(circ_interval(0, 5, s)) == expected


@given(st.integers(3, 30).flatmap(lambda s: st.tuples(st.integers(0, s - 1), st.integers(0, s - 1), st.just(s))))
def test_circ_interval_size(args):
    k, n, s = args
    iv = set(circ_interval(k, n, s))
    assert {k, n} <= iv
    d = circ_dist(k, n, s)
    assert len(iv) == (s if 2 * d == s else d + 1)


def test_dist_examples():
    assert dist(ProductGraph.parse("P5xC7"), (0, 0), (3, 5)) == 5
    assert dist(ProductGraph.parse("C5xC5"), (1, 1), (1, 1)) == 0


def test_dist_antipodal_torus_matches_bfs():
    g = ProductGraph.parse("C6xC6")
    d = all_distances(g)
    assert d[(0, 0)][(3, 3)] == 6
    assert dist(g, (0, 0), (3, 3)) == 6


def test_dist_rejects_out_of_range():
    with pytest.raises(InputError):
        dist(ProductGraph.parse("P3xC4"), (3, 0), (0, 0))


def test_interval_examples():
    assert interval(ProductGraph.parse("P4xP4"), (0, 0), (2, 1)) == {(x, y) for x in range(3) for y in range(2)}
    assert interval(ProductGraph.parse("C5xC5"), (2, 2), (2, 2)) == {(2, 2)}


def test_interval_antipodal_cycle_factor():
    g = ProductGraph.parse("P3xC4")
    expected = geodesic_members(all_distances(g), (0, 0), (2, 2))
    assert expected == {(x, y) for x in range(3) for y in range(4)}
    assert interval(g, (0, 0), (2, 2)) == expected


@pytest.mark.parametrize("desc", ["P4xP5", "P3xC6", "C5xP4", "C6xC5", "C4xC4"])
def test_interval_matches_bfs_oracle(desc):
    g = ProductGraph.parse(desc)
    d = all_distances(g)
    for u in g.vertices():
        for v in g.vertices():
            assert interval(g, u, v) == geodesic_members(d, u, v)


graphs = st.sampled_from(["P6xP7", "P5xC8", "C7xP3", "C6xC9", "C8xC8", "C3xC3"]).map(ProductGraph.parse)


@settings(max_examples=200)
@given(graphs, st.data())
def test_dist_is_a_metric(g, data):
    vert = st.tuples(st.integers(0, g.s - 1), st.integers(0, g.t - 1))
    u, v, w = data.draw(vert), data.draw(vert), data.draw(vert)
    assert dist(g, u, v) == dist(g, v, u)
    assert dist(g, u, w) <= dist(g, u, v) + dist(g, v, w)
    assert (dist(g, u, v) == 0) == (u == v)
    assert interval(g, u, v) == interval(g, v, u)


@pytest.mark.parametrize(
    "text,expected",
    [("C15xC15", "C15xC15"), ("p4xc9", "P4xC9"), ("C3XP2", "C3xP2"), (" P2 x P2 ", "P2xP2")],
)
def test_descriptor_parsing(text, expected):
    assert str(ProductGraph.parse(text)) == expected


@pytest.mark.parametrize("text", ["", "C2xC5", "P1xC5", "Q3xC3", "C3xC3xC3", "C3"])
def test_descriptor_rejects(text):
    with pytest.raises(InputError):
        ProductGraph.parse(text)


def test_vertex_count_and_neighbors():
    g = ProductGraph.parse("P3xC4")
    assert g.n == 12 == len(g.vertices())
    assert sorted(g.neighbors(Vertex(0, 0))) == [(0, 1), (0, 3), (1, 0)]
