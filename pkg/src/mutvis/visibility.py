"""Exact mutual-visibility checks.

A pair ``u, v`` of a set ``M`` is visible when some shortest ``u``-``v`` path
has no interior vertex in ``M``.  All shortest paths live in the interval
``I(u, v)``, which is layered by distance from ``u``; reachability is found
by sweeping those layers once, with whole layers held as integer bitmasks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .grid import InputError, ProductGraph, Vertex, dist


class RefusalError(RuntimeError):
    """A request exceeding a configured safety cap."""


class VertexSet:
    """Set of vertices of a product graph, stored as a bitmask.

    Bit ``y * s + x`` is set when ``(x, y)`` is a member.
    """

    __slots__ = ("graph", "mask", "_card")

    def __init__(self, graph: ProductGraph, members: Iterable = (), *, mask: int | None = None):
        self.graph = graph
        if mask is not None:
            if mask < 0 or mask >> graph.n:
                raise InputError("mask has bits outside the vertex grid")
            self.mask = mask
        else:
            m = 0
            for v in members:
                b = graph.bit(graph.check(v))
                if m & b:
                    raise InputError(f"duplicate vertex {tuple(v)}")
                m |= b
            self.mask = m
        self._card = bin(self.mask).count("1")

    def __len__(self):
        return self._card

    def __contains__(self, v) -> bool:
        x, y = v
        if not (0 <= x < self.graph.s and 0 <= y < self.graph.t):
            return False
        return bool(self.mask & self.graph.bit(v))

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.members())

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.graph == other.graph and self.mask == other.mask

    def __hash__(self):
        return hash((self.graph, self.mask))

    def __repr__(self):
        return f"VertexSet({self.graph}, n={len(self)})"

    def members(self) -> list[Vertex]:
        """Members sorted lexicographically by ``(x, y)``."""
        g = self.graph
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(g.vertex_at(low.bit_length() - 1))
            m ^= low
        out.sort()
        return out

    def on(self, graph: ProductGraph) -> "VertexSet":
        """Same coordinate pairs on another graph (range-checked)."""
        return VertexSet(graph, self.members())

    def transpose(self) -> "VertexSet":
        """The mirrored set ``{(y, x)}`` on the factor-swapped product."""
        g = ProductGraph(self.graph.fy, self.graph.fx)
        return VertexSet(g, [(y, x) for x, y in self.members()])

    def add(self, v) -> "VertexSet":
        return VertexSet(self.graph, mask=self.mask | self.graph.bit(self.graph.check(v)))

    def remove(self, v) -> "VertexSet":
        return VertexSet(self.graph, mask=self.mask & ~self.graph.bit(self.graph.check(v)))

    # serialisation

    def to_dict(self) -> dict:
        return {"graph": str(self.graph), "set": [[v.x, v.y] for v in self.members()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, graph: ProductGraph | None = None) -> "VertexSet":
        try:
            declared = ProductGraph.parse(data["graph"]) if "graph" in data else None
            pairs = data["set"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"vertex set JSON needs 'graph' and 'set': {exc}") from None
        if graph is None:
            if declared is None:
                raise InputError("no graph given")
            graph = declared
        elif declared is not None and declared != graph:
            raise InputError(f"set is for {declared}, expected {graph}")
        if not isinstance(pairs, list):
            raise InputError("'set' must be a list of [x, y] pairs")
        verts = []
        for p in pairs:
            if not (isinstance(p, list) and len(p) == 2 and all(type(c) is int for c in p)):
                raise InputError(f"bad vertex {p!r}; expected [x, y] integers")
            verts.append(tuple(p))
        return cls(graph, verts)

    @classmethod
    def from_json(cls, text: str, graph: ProductGraph | None = None) -> "VertexSet":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
        if not isinstance(data, dict):
            raise InputError("vertex set JSON must be an object")
        return cls.from_dict(data, graph)

    def to_grid(self) -> str:
        """ASCII matrix: row ``y`` (0 at top), column ``x``; ``#`` member, ``.`` not."""
        g = self.graph
        lines = []
        for y in range(g.t):
            lines.append("".join("#" if self.mask >> (y * g.s + x) & 1 else "." for x in range(g.s)))
        return "\n".join(lines)

    @classmethod
    def from_grid(cls, graph: ProductGraph, text: str) -> "VertexSet":
        rows = [r.strip() for r in text.strip().splitlines()]
        if len(rows) != graph.t or any(len(r) != graph.s for r in rows):
            raise InputError(f"grid must be {graph.t} rows of {graph.s} characters")
        verts = []
        for y, row in enumerate(rows):
            for x, ch in enumerate(row):
                if ch == "#":
                    verts.append((x, y))
                elif ch != ".":
                    raise InputError(f"unexpected character {ch!r} in grid")
        return cls(graph, verts)


@dataclass(frozen=True)
class VisibilityReport:
    ok: bool
    failing_pair: tuple[Vertex, Vertex] | None
    pairs_checked: int

    def __bool__(self):
        return self.ok


class Geometry:
    """Bitmask machinery for one product graph: neighbourhoods, distance rings, intervals."""

    def __init__(self, g: ProductGraph):
        self.g = g
        s, t = g.s, g.t
        self.s, self.t = s, t
        cols = g.column_masks
        rows = g.row_masks
        self.full = g.full_mask
        self.first_col, self.last_col = cols[0], cols[s - 1]
        self.first_row, self.last_row = rows[0], rows[t - 1]
        self.x_cycle = g.fx.is_cycle
        self.y_cycle = g.fy.is_cycle
        self.wrap_y = s * (t - 1)
        self._rings: dict[int, tuple[int, ...]] = {}
        self._xbox: dict[tuple[int, int], int] = {}
        self._ybox: dict[tuple[int, int], int] = {}

    def spread(self, b: int) -> int:
        """All vertices adjacent to some vertex of ``b``."""
        s = self.s
        not_last = b & ~self.last_col
        not_first = b & ~self.first_col
        out = (not_last << 1) | (not_first >> 1)
        if self.x_cycle:
            out |= ((b & self.last_col) >> (s - 1)) | ((b & self.first_col) << (s - 1))
        out |= ((b << s) & self.full) | (b >> s)
        if self.y_cycle:
            out |= ((b & self.last_row) >> self.wrap_y) | ((b & self.first_row) << self.wrap_y)
        return out

    def rings(self, idx: int) -> tuple[int, ...]:
        """``rings(i)[k]`` is the mask of vertices at distance ``k`` from vertex ``i``."""
        r = self._rings.get(idx)
        if r is not None:
            return r
        g = self.g
        u = g.vertex_at(idx)
        xcls: dict[int, int] = {}
        for x in range(self.s):
            a = g.fx.dist(u.x, x)
            xcls[a] = xcls.get(a, 0) | g.column_masks[x]
        ycls: dict[int, int] = {}
        for y in range(self.t):
            b = g.fy.dist(u.y, y)
            ycls[b] = ycls.get(b, 0) | g.row_masks[y]
        top = max(xcls) + max(ycls)
        out = [0] * (top + 1)
        for a, xm in xcls.items():
            for b, ym in ycls.items():
                out[a + b] |= xm & ym
        r = tuple(out)
        self._rings[idx] = r
        return r

    def interval_mask(self, u: Vertex, v: Vertex) -> int:
        key = (u.x, v.x)
        xm = self._xbox.get(key)
        if xm is None:
            xm = 0
            for x in self.g.fx.interval(u.x, v.x):
                xm |= self.g.column_masks[x]
            self._xbox[key] = xm
        key = (u.y, v.y)
        ym = self._ybox.get(key)
        if ym is None:
            ym = 0
            for y in self.g.fy.interval(u.y, v.y):
                ym |= self.g.row_masks[y]
            self._ybox[key] = ym
        return xm & ym

    def visible(self, mask: int, ui: int, vi: int) -> bool:
        """Does a shortest path from vertex ``ui`` to ``vi`` avoid ``mask`` in its interior?"""
        ru = self.rings(ui)
        rv = self.rings(vi)
        bu, bv = 1 << ui, 1 << vi
        free = ~(mask & ~(bu | bv))
        # dist(u, v): the ring of u holding v
        d = next(k for k, r in enumerate(ru) if r & bv)
        layer = bu
        spread = self.spread
        for k in range(1, d + 1):
            layer = spread(layer) & ru[k] & rv[d - k] & free
            if not layer:
                return False
        return True


@lru_cache(maxsize=256)
def geometry(g: ProductGraph) -> Geometry:
    return Geometry(g)


def _as_mask(g: ProductGraph, m) -> int:
    if isinstance(m, VertexSet):
        if m.graph != g:
            raise InputError(f"vertex set belongs to {m.graph}, not {g}")
        return m.mask
    return VertexSet(g, m).mask


def is_visible(g: ProductGraph, m, u, v) -> bool:
    """True iff some shortest ``u``-``v`` path avoids ``m - {u, v}`` internally."""
    u, v = g.check(u), g.check(v)
    if u == v:
        raise InputError("u and v must be distinct")
    return geometry(g).visible(_as_mask(g, m), g.index(u), g.index(v))


def is_mutual_visibility_set(g: ProductGraph, m) -> VisibilityReport:
    """Check every pair of ``m``; report the lexicographically first failure."""
    mask = _as_mask(g, m)
    geo = geometry(g)
    members = VertexSet(g, mask=mask).members()
    checked = 0
    for a, u in enumerate(members):
        ui = g.index(u)
        for w in members[a + 1:]:
            checked += 1
            wi = g.index(w)
            interior = mask & ~((1 << ui) | (1 << wi))
            if not interior & geo.interval_mask(u, w):
                continue
            if not geo.visible(mask, ui, wi):
                return VisibilityReport(False, (u, w), checked)
    return VisibilityReport(True, None, checked)


def can_extend(g: ProductGraph, mask: int, idx: int) -> bool:
    """Is ``mask | {idx}`` still mutual-visibility, given that ``mask`` is?

    Only pairs through the new vertex, or whose interval contains it, can change.
    """
    geo = geometry(g)
    bit = 1 << idx
    if mask & bit:
        return True
    new = mask | bit
    v = g.vertex_at(idx)
    rest = mask
    others = []
    while rest:
        low = rest & -rest
        others.append(low.bit_length() - 1)
        rest ^= low
    for a in others:
        if not geo.visible(new, a, idx):
            return False
    for i, a in enumerate(others):
        ua = g.vertex_at(a)
        for b in others[i + 1:]:
            if geo.interval_mask(ua, g.vertex_at(b)) & bit and not geo.visible(new, a, b):
                return False
    return True


def brute_force_paths(g: ProductGraph, u, v, cap: int = 12) -> list[tuple[Vertex, ...]]:
    """Every shortest ``u``-``v`` path, listed explicitly (test oracle)."""
    u, v = g.check(u), g.check(v)
    d = dist(g, u, v)
    if d > cap:
        raise RefusalError(f"d(u, v) = {d} exceeds path enumeration cap {cap}")
    paths: list[tuple[Vertex, ...]] = []

    def walk(path: list[Vertex]):
        here = path[-1]
        if here == v:
            paths.append(tuple(path))
            return
        left = dist(g, here, v)
        for w in g.neighbors(here):
            if dist(g, w, v) == left - 1:
                path.append(w)
                walk(path)
                path.pop()

    walk([u])
    return paths
