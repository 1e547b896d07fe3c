"""Closed-form mutual-visibility sets on cylinders and tori.

Torus families ``C_t x C_t`` (``3t`` vertices) are split by ``t mod 6``; each
places three vertices in every row and every column.  Rectangular tori
``C_s x C_t`` (``s > t``) are reached by inserting empty columns into a square
construction.  Cylinders ``P_{t-1} x C_t`` (``2t`` vertices) are assembled from
a two-per-fibre pattern on ``P_{t-3} x C_{t-3}`` plus six boundary vertices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .grid import InputError, ProductGraph, Vertex, dist
from .visibility import VertexSet


class UnsupportedSize(ValueError):
    """No closed-form construction covers the requested size."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# -- sufficient condition on grids ------------------------------------------


class LemmaCheck(NamedTuple):
    ok: bool
    violated: str | None = None

    def __bool__(self):
        return self.ok


def lemma1_check(m: Iterable, s: int, t: int) -> LemmaCheck:
    """Sufficient test for mutual visibility on the grid ``P_s x P_t``.

    Passes when (i) each row and column holds at most two members, (ii) the
    x-spans of any two two-member rows overlap, (iii) the y-spans of any two
    two-member columns overlap, and (iv) members are pairwise at distance >= 3.
    Returns the first failing condition as ``"i"`` .. ``"iv"``.
    """
    g = ProductGraph.grid(s, t)
    pts = m.members() if isinstance(m, VertexSet) else sorted(g.check(v) for v in m)
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for x, y in pts:
        rows.setdefault(y, []).append(x)
        cols.setdefault(x, []).append(y)
    if any(len(r) > 2 for r in rows.values()) or any(len(c) > 2 for c in cols.values()):
        return LemmaCheck(False, "i")

    def spans_meet(groups):
        spans = [(min(v), max(v)) for v in groups.values() if len(v) == 2]
        return all(a0 <= b1 and b0 <= a1 for i, (a0, a1) in enumerate(spans) for b0, b1 in spans[i + 1:])

    if not spans_meet(rows):
        return LemmaCheck(False, "ii")
    if not spans_meet(cols):
        return LemmaCheck(False, "iii")
    for i, u in enumerate(pts):
        for v in pts[i + 1:]:
            if abs(u[0] - v[0]) + abs(u[1] - v[1]) < 3:
                return LemmaCheck(False, "iv")
    return LemmaCheck(True)


# -- square tori --------------------------------------------------------------


def _torus_mod3(t: int) -> set:
    k = t // 3
    return {((2 * i + j * k) % t, i) for i in range(t) for j in range(3)}


def _torus_mod0(t: int) -> set:
    k = t // 3
    half = k // 2
    out = {(i + j * k, 2 * i + l * k) for i in range(half) for j in range(3) for l in range(3)}
    out |= {(k - i - 1 + j * k, (2 * i + 3 + l * k) % t) for i in range(half) for j in range(3) for l in range(3)}
    return out


def _interleaved(t: int, stride: int, even_rows: int, odd_rows: int, odd_offset: int) -> set:
    # Even rows 2i start at x = i, odd rows 2i+1 at x = i + odd_offset; three per row.
    out = {((i + j * stride) % t, 2 * i) for i in range(even_rows) for j in range(3)}
    out |= {((i + odd_offset + j * stride) % t, 2 * i + 1) for i in range(odd_rows) for j in range(3)}
    return out


def _torus_mod5(t: int) -> set:
    k = (t - 2) // 3
    return _interleaved(t, k + 1, (3 * k + 3) // 2, (3 * k + 1) // 2, (3 * k + 3) // 2)


def _torus_mod1(t: int) -> set:
    k = (t - 1) // 3
    return _interleaved(t, k, (3 * k + 2) // 2, 3 * k // 2, (3 * k + 2) // 2)


def _torus_mod2(t: int) -> set:
    k = (t - 2) // 3
    return _interleaved(t, k + 1, (3 * k + 2) // 2, (3 * k + 2) // 2, (3 * k + 2) // 2)


def _torus_mod4(t: int) -> set:
    k = (t - 1) // 3
    return _interleaved(t, k, (3 * k + 1) // 2, (3 * k + 1) // 2, (3 * k + 1) // 2)


def _column_form(t: int) -> set | None:
    """The transposed restatement of each family, where one exists."""
    r = t % 6
    if r == 3:
        k = t // 3
        return {(i, ((k + 1) // 2 * i + j * k) % t) for i in range(t) for j in range(3)}
    if r == 5:
        k = (t - 2) // 3
        return {(i, (2 * i + j * k) % t) for i in range(t) for j in range(3)}
    if r == 1:
        k = (t - 1) // 3
        return {(i, (2 * i + j * (k + 1)) % t) for i in range(t) for j in range(3)}
    return None


class Family(enum.Enum):
    """Square-torus families keyed by ``t mod 6``.

    ``thirds(t)`` gives the widths of the three column blocks that hold one
    member of every row each; fibre insertion spreads new columns across them.
    """

    TorusMod0 = (0, 18, _torus_mod0)
    TorusMod1 = (1, 19, _torus_mod1)
    TorusMod2 = (2, 20, _torus_mod2)
    TorusMod3 = (3, 15, _torus_mod3)
    TorusMod4 = (4, 22, _torus_mod4)
    TorusMod5 = (5, 17, _torus_mod5)
    CylinderOddT = ("odd", 13, None)
    CylinderEvenT = ("even", 14, None)

    def __init__(self, residue, min_t: int, build: Callable[[int], set] | None):
        self.residue = residue
        self.min_t = min_t
        self.build = build

    def applies(self, t: int) -> bool:
        if isinstance(self.residue, int):
            return t % 6 == self.residue and t >= self.min_t
        return t >= self.min_t and (t % 2 == 1) == (self.residue == "odd")

    @classmethod
    def torus(cls, t: int) -> "Family":
        fam = _TORUS_BY_RESIDUE[t % 6]
        if t < fam.min_t:
            raise UnsupportedSize(
                f"no closed-form C{t}xC{t} construction: t = {t} = {t % 6} (mod 6) needs t >= {fam.min_t}"
            )
        return fam

    @classmethod
    def cylinder(cls, t: int) -> "Family":
        if t < 13:
            raise UnsupportedSize(f"no closed-form P{t - 1}xC{t} construction below t = 13 (got {t})")
        return cls.CylinderOddT if t % 2 else cls.CylinderEvenT

    def thirds(self, t: int) -> tuple[int, int, int]:
        if self.residue in (0, 3):
            k = t // 3
            return (k, k, k)
        if self.residue in (2, 5):
            k = (t - 2) // 3
            return (k + 1, k + 1, k)
        if self.residue in (1, 4):
            k = (t - 1) // 3
            return (k, k, k + 1)
        raise InputError(f"{self.name} has no column thirds")


_TORUS_BY_RESIDUE = {f.residue: f for f in Family if isinstance(f.residue, int)}


def construct_torus_square(t: int) -> VertexSet:
    """A ``3t``-vertex mutual-visibility set of ``C_t x C_t``."""
    fam = Family.torus(t)
    return VertexSet(ProductGraph.torus(t, t), sorted(fam.build(t)))


def torus_column_form(t: int) -> VertexSet | None:
    """Alternative (column-indexed) formula for the same family, if it has one."""
    Family.torus(t)
    pts = _column_form(t)
    return None if pts is None else VertexSet(ProductGraph.torus(t, t), sorted(pts))


def cross_pairs(m: VertexSet) -> list[tuple[Vertex, Vertex]]:
    """Member pairs closer than 3; only the t = 2, 4 (mod 6) tori have any."""
    pts = m.members()
    g = m.graph
    return [(u, v) for i, u in enumerate(pts) for v in pts[i + 1:] if dist(g, u, v) < 3]


# -- cylinders ----------------------------------------------------------------


def _base_stride(t: int) -> int:
    return 2 * ((t - 3) // 4) + 1 if t % 2 else t - 8


def _base_x(t: int, i: int, j: int) -> int:
    return (2 * i + j * _base_stride(t)) % (t - 3)


def construct_torus_base(t: int) -> VertexSet:
    """Two-per-fibre set of ``2(t-3)`` vertices on ``P_{t-3} x C_{t-3}``."""
    Family.cylinder(t)
    n = t - 3
    return VertexSet(ProductGraph.cylinder(n, n), sorted({(_base_x(t, i, j), i) for i in range(n) for j in range(2)}))


def construct_cylinder(t: int) -> VertexSet:
    """A ``2t``-vertex mutual-visibility set of ``P_{t-1} x C_t``.

    The base pattern is shifted one column right and its rows are split into
    three bands, leaving rows ``0, ceil(t/3), ceil(2t/3)`` and the columns
    ``0, t-2`` for the six boundary vertices.
    """
    Family.cylinder(t)
    c1, c2 = _ceil_div(t, 3), _ceil_div(2 * t, 3)
    pts = {(x, y) for x in (0, t - 2) for y in (0, c1, c2)}
    for i in range(t - 3):
        lift = 1 if i < c1 - 1 else 2 if i <= c2 - 3 else 3
        pts |= {(_base_x(t, i, j) + 1, i + lift) for j in range(2)}
    return VertexSet(ProductGraph.cylinder(t - 1, t), sorted(pts))


def embed_cylinder(m: VertexSet, s: int) -> VertexSet:
    """Reinterpret a set of ``P_k x C_t`` on the longer cylinder ``P_s x C_t``."""
    g = m.graph
    if g.fx.is_cycle or not g.fy.is_cycle:
        raise InputError(f"expected a P x C cylinder set, got {g}")
    if s <= g.s:
        raise InputError(f"target path order {s} must exceed {g.s}")
    return m.on(ProductGraph.cylinder(s, g.t))


# -- fibre insertion ----------------------------------------------------------


@dataclass(frozen=True)
class InsertionPlan:
    """Insert ``i`` empty columns into a torus set of width ``base_t``.

    ``shift[x]`` counts insertion positions strictly below ``x``; column ``x``
    moves to ``x + shift[x]``.
    """

    base_t: int
    i: int
    s_set: tuple[int, ...]
    shift: tuple[int, ...]
    thirds: tuple[int, int, int]

    def after(self) -> tuple[int, int, int]:
        """Column thirds of the widened set."""
        grown = list(self.thirds)
        edges = (self.thirds[0], self.thirds[0] + self.thirds[1])
        for p in self.s_set:
            grown[(p >= edges[0]) + (p >= edges[1])] += 1
        return tuple(grown)


def _spread_positions(thirds: tuple[int, int, int], i: int) -> list[int]:
    # Round-robin over the thirds; an exhausted third is skipped.
    offsets = (0, thirds[0], thirds[0] + thirds[1])
    out = []
    rnd = 0
    while len(out) < i:
        for c in range(3):
            if rnd < thirds[c] and len(out) < i:
                out.append(offsets[c] + rnd)
        rnd += 1
    return out


def insertion_plan(t: int, i: int, thirds: tuple[int, int, int] | None = None) -> InsertionPlan:
    """Plan for widening a square ``C_t x C_t`` construction by ``i`` columns.

    Positions are taken round-robin from the three column thirds, which
    reproduces ``S_i = {(j mod 3) k + floor(j/3) : j < i}`` (with ``k + 1`` as the
    stride when ``t = 3k + 2`` and the full range once ``i = t = 3k + 1``).
    Pass ``thirds`` to plan a later stage on an already widened set of width ``t``.
    """
    if thirds is None:
        thirds = Family.torus(t).thirds(t)
    elif sum(thirds) != t:
        raise InputError(f"thirds {thirds} do not add up to width {t}")
    if not 0 <= i <= t:
        raise InputError(f"insertion count must be in [0, {t}], got {i}")
    s_set = tuple(_spread_positions(thirds, i))
    shift = []
    seen = 0
    members = set(s_set)
    for x in range(t):
        shift.append(seen)
        seen += x in members
    return InsertionPlan(t, i, s_set, tuple(shift), tuple(thirds))


def extend_torus(m: VertexSet, plan: InsertionPlan) -> VertexSet:
    g = m.graph
    if not (g.fx.is_cycle and g.fy.is_cycle) or g.s != plan.base_t:
        raise InputError(f"plan for width {plan.base_t} does not fit {g}")
    target = ProductGraph.torus(g.s + plan.i, g.t)
    return VertexSet(target, [(x + plan.shift[x], y) for x, y in m.members()])


def extend_torus_to(m: VertexSet, s: int, thirds: tuple[int, int, int] | None = None) -> VertexSet:
    """Widen a square construction to ``C_s x C_t`` by repeated insertion (at most doubling per stage)."""
    g = m.graph
    if s < g.s:
        raise InputError(f"cannot shrink C{g.s} to C{s}")
    if thirds is None:
        thirds = Family.torus(g.t).thirds(g.t)
    while m.graph.s < s:
        w = m.graph.s
        plan = insertion_plan(w, min(s - w, w), thirds)
        m = extend_torus(m, plan)
        thirds = plan.after()
    return m


def construct_torus(s: int, t: int) -> VertexSet:
    """``3t``-vertex set of ``C_s x C_t`` for ``s >= t`` with ``t`` covered by a family."""
    if s < t:
        raise UnsupportedSize(f"constructions need s >= t (got C{s}xC{t}); swap the factors")
    return extend_torus_to(construct_torus_square(t), s)
