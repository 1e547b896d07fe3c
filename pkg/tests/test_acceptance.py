"""Acceptance gate: seven criteria, each reported as one PASS/FAIL line at the end of the run."""

import itertools
import random
import time

import pytest

from mutvis import ProductGraph, VertexSet, interval, is_mutual_visibility_set, is_visible
from mutvis.constructions import (
    construct_cylinder,
    construct_torus_square,
    embed_cylinder,
    extend_torus,
    extend_torus_to,
    insertion_plan,
    lemma1_check,
)
from mutvis.known import (
    CYLINDER_COLUMNS,
    CYLINDER_TABLE,
    TORUS_SATURATION,
    TORUS_TABLE,
    cylinder_table_value,
    torus_table_value,
)
from mutvis.solver import construction_witness, mu_exact, upper_bound
from oracles import adjacency, bfs, brute_force_mu, small_products, unhindered_path_exists

TORUS_TS = [15, 21, 27, 33, 18, 24, 30, 17, 23, 29, 19, 25, 31, 20, 26, 32, 22, 28, 34]


@pytest.mark.criterion(1)
def test_square_tori_verify():
    start = time.monotonic()
    for t in TORUS_TS:
        m = construct_torus_square(t)
        assert m.graph == ProductGraph.torus(t, t)
        assert len(m) == 3 * t
        assert is_mutual_visibility_set(m.graph, m).ok, t
    assert time.monotonic() - start < 5


@pytest.mark.criterion(2)
def test_cylinders_verify_and_embed():
    start = time.monotonic()
    for t in range(13, 25):
        m = construct_cylinder(t)
        assert m.graph == ProductGraph.cylinder(t - 1, t)
        assert len(m) == 2 * t
        assert is_mutual_visibility_set(m.graph, m).ok, t
        wide = embed_cylinder(m, t + 5)
        assert len(wide) == 2 * t
        assert is_mutual_visibility_set(wide.graph, wide).ok, t
    assert time.monotonic() - start < 5


@pytest.mark.criterion(3)
def test_fibre_insertion():
    start = time.monotonic()
    base = construct_torus_square(15)
    for i in range(1, 16):
        m = extend_torus(base, insertion_plan(15, i))
        assert m.graph == ProductGraph.torus(15 + i, 15)
        assert len(m) == 45
        assert is_mutual_visibility_set(m.graph, m).ok, i
    m = extend_torus_to(base, 45)
    assert m.graph == ProductGraph.torus(45, 15) and len(m) == 45
    assert is_mutual_visibility_set(m.graph, m).ok
    assert time.monotonic() - start < 10


EXACT_CELLS = [
    ("C3xC3", 6), ("C4xC3", 7), ("C5xC3", 7), ("C6xC3", 9), ("C4xC4", 9), ("C5xC4", 10), ("C5xC5", 10),
    ("P2xC3", 4), ("P2xC4", 5), ("P2xC5", 5), ("P2xC6", 6),
    ("P3xC3", 6), ("P3xC4", 7), ("P4xC4", 8),
]


@pytest.mark.criterion(4)
@pytest.mark.parametrize("desc,mu", EXACT_CELLS)
def test_table_cell_exact(desc, mu):
    start = time.monotonic()
    r = mu_exact(ProductGraph.parse(desc))
    assert r.exhaustive
    assert r.mu == mu
    assert time.monotonic() - start < 60


def _published_cells():
    for t, row in CYLINDER_TABLE.items():
        for s in CYLINDER_COLUMNS:
            yield ProductGraph.cylinder(s, t), cylinder_table_value(s, t)
    for t in TORUS_TABLE:
        for s in range(t, 15):
            yield ProductGraph.torus(s, t), torus_table_value(s, t)


def _sandwiched_cells():
    out = []
    for g, value in _published_cells():
        if value != upper_bound(g):
            continue
        w = construction_witness(g)
        if w is not None and len(w) == value:
            out.append((g, value, w))
    return out


@pytest.mark.criterion(4)
def test_table_sandwich():
    cells = _sandwiched_cells()
    covered = {str(g) for g, _, _ in cells}
    # cylinders P_s x C_t reaching 2t from the shipped or closed-form witnesses
    for t in range(6, 14):
        for s in range(max(3, t - 1), 13):
            assert f"P{s}xC{t}" in covered
    # tori at the size where mu first reaches 3t, and the widened C12 cells
    for t, s in TORUS_SATURATION.items():
        assert f"C{s}xC{t}" in covered
    assert {"C12xC12", "C13xC12", "C14xC12"} <= covered
    for g, value, w in cells:
        assert w.graph == g
        assert is_mutual_visibility_set(g, w).ok, g
        assert len(w) == value == upper_bound(g)


@pytest.mark.criterion(4)
def test_c12_torus_sandwich():
    g = ProductGraph.torus(12, 12)
    w = construction_witness(g)
    assert w is not None, "no 36-vertex witness for C12xC12"
    assert len(w) == 36 == upper_bound(g) == torus_table_value(12, 12)
    assert is_mutual_visibility_set(g, w).ok


def _dp_visible_from(adj, blockers, u):
    """Vertices reachable from u along shortest paths whose interior avoids ``blockers``."""
    d = bfs(adj, u)
    order = sorted(d, key=d.get)
    reach = {u}
    for w in order[1:]:
        for z in adj[w]:
            if d[z] == d[w] - 1 and z in reach and (z == u or z not in blockers):
                reach.add(w)
                break
    return reach


def _factor_products(limit):
    kinds = [("P", n) for n in range(2, limit + 1)] + [("C", n) for n in range(3, limit + 1)]
    for (kx, s), (ky, t) in itertools.product(kinds, repeat=2):
        yield ProductGraph.parse(f"{kx}{s}x{ky}{t}")


@pytest.mark.criterion(5)
def test_visibility_matches_path_oracle():
    rng = random.Random(2024)
    for g in _factor_products(8):
        adj = adjacency(g)
        verts = g.vertices()
        for _ in range(200):
            members = rng.sample(verts, rng.randint(0, g.n))
            m = VertexSet(g, members)
            blockers = set(members)
            u = rng.choice(verts)
            reach = _dp_visible_from(adj, blockers - {u}, u)
            for v in verts:
                if v != u:
                    assert is_visible(g, m, u, v) == (v in reach), (g, members, u, v)
            a, b = rng.sample(verts, 2)
            want = unhindered_path_exists(adj, {b: bfs(adj, b)}, blockers - {a, b}, a, b)
            assert is_visible(g, m, a, b) == want


@pytest.mark.criterion(5)
def test_interval_matches_bfs_oracle():
    for g in _factor_products(10):
        adj = adjacency(g)
        verts = g.vertices()
        index = {v: i for i, v in enumerate(verts)}
        rings = {}
        dists = {}
        for u in verts:
            d = bfs(adj, u)
            dists[u] = d
            r = [0] * (max(d.values()) + 1)
            for w, k in d.items():
                r[k] |= 1 << index[w]
            rings[u] = r
        for u, v in itertools.combinations_with_replacement(verts, 2):
            duv = dists[u][v]
            want = 0
            for k in range(duv + 1):
                want |= rings[u][k] & rings[v][duv - k]
            got = 0
            for w in interval(g, u, v):
                got |= 1 << index[w]
            assert got == want, (g, u, v)


@pytest.mark.criterion(6)
def test_lemma1_soundness_sweep():
    rng = random.Random(6)
    passed = 0
    for trial in range(10_000):
        s, t = rng.randint(2, 12), rng.randint(2, 12)
        g = ProductGraph.grid(s, t)
        verts = g.vertices()
        if trial % 2:
            m = set(rng.sample(verts, rng.randint(0, min(g.n, 6))))
        else:
            # grow a set while it keeps satisfying the four conditions
            m = set()
            for v in rng.sample(verts, g.n):
                if lemma1_check(m | {v}, s, t):
                    m.add(v)
        if lemma1_check(m, s, t):
            passed += 1
            assert is_mutual_visibility_set(g, m).ok, (s, t, sorted(m))
    assert passed > 5_000


@pytest.mark.criterion(7)
def test_solver_matches_subset_enumeration():
    start = time.monotonic()
    graphs = small_products(12)
    assert {"P2xP2", "P2xC6", "C3xC4"} <= {str(g) for g in graphs}
    for g in graphs:
        assert mu_exact(g).mu == brute_force_mu(g), g
    assert time.monotonic() - start < 60
