"""Exact and heuristic computation of the mutual-visibility number.

``mu_exact`` is a branch-and-bound over vertices in index order (row-major,
bit ``y * s + x``), trying "include" before "exclude".  Mutual visibility is
hereditary, so after each inclusion the candidate pool is filtered down to
vertices that keep the set feasible, and a pool never regains a vertex.

The bound combines fibre capacities: each row and column is a convex copy of
a path (at most 2 members) or a cycle (at most 3 members).  Rotations and
reflections of the factors are factored out by fixing where the first member
sits and, when rows can be rotated, by requiring row 0 to be a fullest row.
"""

from __future__ import annotations

import enum
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .grid import InputError, Kind, ProductGraph
from .visibility import RefusalError, VertexSet, can_extend, geometry, is_mutual_visibility_set

log = logging.getLogger(__name__)

DEFAULT_CAP = 64
TIMEOUT_CHECK_EVERY = 1 << 14


class Bound(enum.Enum):
    NONE = "None"
    CYLINDER = "CylinderBound"
    TORUS = "TorusBound"
    GRID = "GridBound"
    SEED = "SeedLowerBound"


@dataclass
class SolveReport:
    graph: ProductGraph
    mu: int
    witness: VertexSet
    nodes_explored: int
    elapsed: float
    bound_used: Bound
    exhaustive: bool

    def to_dict(self) -> dict:
        return {
            "graph": str(self.graph),
            "mu": self.mu,
            "exhaustive": self.exhaustive,
            "witness": [[v.x, v.y] for v in self.witness.members()],
            "nodes": self.nodes_explored,
            "ms": round(self.elapsed * 1000, 3),
            "bound": self.bound_used.value,
        }


def upper_bound(g: ProductGraph) -> int:
    """Fibre-counting bound: ``min(3s, 2t)`` for ``P_s x C_t``, ``3 min(s, t)`` for tori.

    Grids ``P_s x P_t`` get ``2 min(s, t)`` by the same counting.
    """
    return upper_bound_with_source(g)[0]


def upper_bound_with_source(g: ProductGraph) -> tuple[int, Bound]:
    kx, ky = g.fx.kind, g.fy.kind
    if kx is Kind.CYCLE and ky is Kind.CYCLE:
        return 3 * min(g.s, g.t), Bound.TORUS
    if kx is Kind.PATH and ky is Kind.CYCLE:
        return min(3 * g.s, 2 * g.t), Bound.CYLINDER
    if kx is Kind.CYCLE and ky is Kind.PATH:
        return min(3 * g.t, 2 * g.s), Bound.CYLINDER
    return 2 * min(g.s, g.t), Bound.GRID


class _Timeout(Exception):
    pass


class _Search:
    def __init__(self, g: ProductGraph, best_mask: int, target: int, deadline: float | None):
        self.g = g
        self.geo = geometry(g)
        self.n = g.n
        s, t = g.s, g.t
        self.row_of = [i // s for i in range(self.n)]
        self.col_of = [i % s for i in range(self.n)]
        self.rows = g.row_masks
        self.cols = g.column_masks
        self.rcap = 3 if g.fx.is_cycle else 2
        self.ccap = 3 if g.fy.is_cycle else 2
        # rows may be rotated so that row 0 is a fullest one
        self.fullest_row0 = g.fy.is_cycle
        verts = [g.vertex_at(i) for i in range(self.n)]
        self.interval = [[self.geo.interval_mask(verts[a], verts[b]) for b in range(self.n)] for a in range(self.n)]
        self.best_mask = best_mask
        self.best = best_mask.bit_count()
        self.target = target
        self.deadline = deadline
        self.nodes = 0
        self.done = False

    def first_positions(self) -> list[int]:
        g = self.g
        out = []
        for i in range(self.n):
            x, y = self.col_of[i], self.row_of[i]
            if g.fy.is_cycle and y != 0:
                continue
            if g.fx.is_cycle and x != 0:
                continue
            if not g.fx.is_cycle and x > (g.s - 1) // 2:
                continue
            out.append(i)
        return out

    def row_limit(self, cur: int, cand: int) -> int:
        if not self.fullest_row0:
            return self.rcap
        r0 = self.rows[0]
        return min(self.rcap, ((cur | cand) & r0).bit_count())

    def bound(self, cur: int, cand: int) -> int:
        size = cur.bit_count()
        lim = self.row_limit(cur, cand)
        rb = 0
        for y, r in enumerate(self.rows):
            have = (cur & r).bit_count()
            cap = self.rcap if y == 0 else lim
            rb += max(0, min(cap - have, (cand & r).bit_count()))
        if size + rb <= self.best:
            return size + rb
        cb = 0
        for c in self.cols:
            have = (cur & c).bit_count()
            cb += max(0, min(self.ccap - have, (cand & c).bit_count()))
        return size + min(rb, cb)

    def filter(self, cur: int, members: list[int], v: int, cand: int) -> int:
        """Candidates ``c`` such that ``cur | c`` stays mutual-visibility (``cur`` includes ``v``)."""
        visible = self.geo.visible
        iv = self.interval
        vb = 1 << v
        rest = cand
        out = 0
        row_full = [r for r in self.rows if (cur & r).bit_count() >= self.rcap]
        col_full = [c for c in self.cols if (cur & c).bit_count() >= self.ccap]
        blocked = 0
        for r in row_full:
            blocked |= r
        for c in col_full:
            blocked |= c
        rest &= ~blocked
        while rest:
            low = rest & -rest
            rest ^= low
            c = low.bit_length() - 1
            trial = cur | low
            ivc = iv[c]
            if not visible(trial, c, v):
                continue
            ok = True
            for m in members:
                if m != v and ivc[m] & vb and not visible(trial, c, m):
                    ok = False
                    break
            if ok:
                for i, a in enumerate(members):
                    iva = iv[a]
                    for b in members[i + 1:]:
                        if iva[b] & low and not visible(trial, a, b):
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                out |= low
        return out

    def tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % TIMEOUT_CHECK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise _Timeout

    def expand(self, cur: int, members: list[int], cand: int):
        self.tick()
        size = len(members)
        if size > self.best:
            self.best = size
            self.best_mask = cur
            if size >= self.target:
                self.done = True
                return
        while cand:
            if self.done or self.bound(cur, cand) <= self.best:
                return
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            if self.fullest_row0 and self.row_of[v] > 0:
                if ((cur & self.rows[self.row_of[v]]).bit_count() + 1) > self.row_limit(cur, cand):
                    continue
            nxt = cur | low
            members.append(v)
            self.expand(nxt, members, self.filter(nxt, members, v, cand))
            members.pop()

    def run_from(self, f: int):
        low = 1 << f
        higher = self.g.full_mask & ~((low << 1) - 1)
        self.expand(low, [f], self.filter(low, [f], f, higher))


def _greedy(g: ProductGraph, order: list[int], start: int = 0) -> int:
    mask = start
    for i in order:
        if not mask >> i & 1 and can_extend(g, mask, i):
            mask |= 1 << i
    return mask


def _branch_worker(args):
    g, f, best_mask, target, deadline = args
    search = _Search(g, best_mask, target, deadline)
    timed_out = False
    try:
        search.run_from(f)
    except _Timeout:
        timed_out = True
    return search.best_mask, search.nodes, timed_out


def _workers_from_env() -> int:
    raw = os.environ.get("MUTVIS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"MUTVIS_THREADS must be an integer, got {raw!r}") from None


def mu_exact(
    g: ProductGraph,
    timeout: float | None = None,
    seed_lower_bound: VertexSet | None = None,
    *,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    workers: int | None = None,
) -> SolveReport:
    """Maximum mutual-visibility set of ``g`` by exhaustive branch and bound.

    On timeout the report has ``exhaustive=False`` and carries the best set found.
    ``workers > 1`` splits the first branching level across processes; the
    value is unchanged and ties between optima go to the lexicographically
    smallest witness.
    """
    if g.n > cap and not force:
        raise RefusalError(f"{g} has {g.n} vertices, above the exhaustive cap {cap}; pass force=True")
    start = time.monotonic()
    deadline = None if timeout is None else start + timeout
    ub, ub_source = upper_bound_with_source(g)

    if seed_lower_bound is not None:
        if seed_lower_bound.graph != g:
            raise InputError(f"seed set belongs to {seed_lower_bound.graph}, not {g}")
        report = is_mutual_visibility_set(g, seed_lower_bound)
        if not report.ok:
            raise InputError(f"seed set is not mutual-visibility: {report.failing_pair}")
        seed_mask = seed_lower_bound.mask
    else:
        seed_mask = _greedy(g, list(range(g.n)))
    seed_size = seed_mask.bit_count()

    workers = _workers_from_env() if workers is None else max(1, workers)
    search = _Search(g, seed_mask, ub, deadline)
    firsts = search.first_positions()
    timed_out = False
    if seed_size < ub:
        if workers == 1:
            try:
                for f in firsts:
                    if search.done:
                        break
                    search.run_from(f)
            except _Timeout:
                timed_out = True
        else:
            jobs = [(g, f, seed_mask, ub, deadline) for f in firsts]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_branch_worker, jobs))
            best_mask = seed_mask
            for mask, nodes, to in results:
                search.nodes += nodes
                timed_out |= to
                if mask != seed_mask and _better(g, mask, best_mask):
                    best_mask = mask
            search.best_mask = best_mask
            search.best = best_mask.bit_count()
            search.done = search.best >= ub

    witness = VertexSet(g, mask=search.best_mask)
    check = is_mutual_visibility_set(g, witness)
    if not check.ok:
        raise AssertionError(f"solver produced an invalid witness on {g}: {check.failing_pair}")
    if search.best >= ub:
        used = ub_source
    elif search.best_mask == seed_mask and not timed_out:
        used = Bound.SEED
    else:
        used = Bound.NONE
    return SolveReport(
        graph=g,
        mu=search.best,
        witness=witness,
        nodes_explored=search.nodes,
        elapsed=time.monotonic() - start,
        bound_used=used,
        exhaustive=not timed_out,
    )


def _better(g: ProductGraph, a: int, b: int) -> bool:
    ca, cb = a.bit_count(), b.bit_count()
    if ca != cb:
        return ca > cb
    return VertexSet(g, mask=a).members() < VertexSet(g, mask=b).members()


def construction_witness(g: ProductGraph) -> VertexSet | None:
    """Largest closed-form or shipped witness that fits ``g``, if any."""
    from . import constructions as cons
    from .fixtures import cylinder_fixture, torus_fixtures

    kx, ky = g.fx.kind, g.fy.kind
    if kx is Kind.CYCLE and ky is Kind.PATH:
        w = construction_witness(ProductGraph(g.fy, g.fx))
        return None if w is None else w.transpose()
    if kx is Kind.CYCLE and ky is Kind.CYCLE:
        if g.s < g.t:
            w = construction_witness(ProductGraph(g.fy, g.fx))
            return None if w is None else w.transpose()
        try:
            return cons.construct_torus(g.s, g.t)
        except cons.UnsupportedSize:
            pass
        for m, thirds in torus_fixtures(g.t):
            if m.graph == g:
                return m
            if thirds is not None and m.graph.s < g.s:
                return cons.extend_torus_to(m, g.s, thirds)
        return None
    if kx is Kind.PATH and ky is Kind.CYCLE:
        t = g.t
        options = []
        if t >= 13 and g.s >= t - 1:
            options.append(cons.construct_cylinder(t))
        if t >= 10 and g.s >= t:
            options.append(cons.construct_torus_base(t + 3))
        fx = cylinder_fixture(t)
        if fx is not None and g.s >= fx.graph.s:
            options.append(fx)
        if not options:
            return None
        best = max(options, key=len)
        return best if best.graph == g else best.on(g)
    return None


def mu_lower_bound(g: ProductGraph, seed: int = 0, restarts: int = 16) -> tuple[int, VertexSet]:
    """Best verified set from constructions, a greedy pass and randomised restarts."""
    best = VertexSet(g, mask=_greedy(g, list(range(g.n))))
    w = construction_witness(g)
    if w is not None and len(w) > len(best) and is_mutual_visibility_set(g, w).ok:
        best = w
    ub = upper_bound(g)
    rng = random.Random(seed)
    order = list(range(g.n))
    for _ in range(restarts):
        if len(best) >= ub:
            break
        rng.shuffle(order)
        cand = VertexSet(g, mask=_greedy(g, order))
        if len(cand) > len(best):
            best = cand
    if not is_mutual_visibility_set(g, best).ok:
        raise AssertionError(f"lower-bound witness on {g} failed verification")
    return len(best), best


def local_search(
    g: ProductGraph, target: int, seed: int = 0, max_iters: int = 20000, timeout: float | None = None
) -> VertexSet | None:
    """Randomised drop-and-refill search for a mutual-visibility set of size ``target``."""
    rng = random.Random(seed)
    start = time.monotonic()
    order = list(range(g.n))
    rng.shuffle(order)
    mask = _greedy(g, order)
    best = mask
    for _ in range(max_iters):
        if best.bit_count() >= target:
            break
        if timeout is not None and time.monotonic() - start > timeout:
            break
        members = [i for i in range(g.n) if mask >> i & 1]
        drop = rng.sample(members, min(len(members), rng.choice((1, 1, 2, 3))))
        trial = mask
        for d in drop:
            trial &= ~(1 << d)
        rng.shuffle(order)
        trial = _greedy(g, order, trial)
        if trial.bit_count() >= mask.bit_count():
            mask = trial
        if mask.bit_count() > best.bit_count():
            best = mask
    if best.bit_count() < target:
        return None
    return VertexSet(g, mask=best)
