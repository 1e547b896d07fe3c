"""Coordinates, distances and geodesic intervals in products of paths and cycles.

Vertices of ``X_s x Y_t`` are pairs ``(x, y)`` with ``0 <= x < s`` and
``0 <= y < t``.  The first factor is indexed by ``x``, the second by ``y``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

MAX_ORDER = 1 << 15


class InputError(ValueError):
    """Malformed or out-of-range input."""


class Kind(enum.Enum):
    PATH = "P"
    CYCLE = "C"


@dataclass(frozen=True)
class Factor:
    kind: Kind
    order: int

    def __post_init__(self):
        lo = 2 if self.kind is Kind.PATH else 3
        if not lo <= self.order <= MAX_ORDER:
            raise InputError(f"{self.kind.value}{self.order}: order must be in [{lo}, {MAX_ORDER}]")

    @property
    def is_cycle(self) -> bool:
        return self.kind is Kind.CYCLE

    def __str__(self):
        return f"{self.kind.value}{self.order}"

    def check(self, c: int) -> None:
        if not 0 <= c < self.order:
            raise InputError(f"coordinate {c} out of range for {self}")

    def dist(self, a: int, b: int) -> int:
        d = abs(a - b)
        return min(d, self.order - d) if self.is_cycle else d

    def interval(self, a: int, b: int) -> tuple[int, ...]:
        return circ_interval(a, b, self.order) if self.is_cycle else lin_interval(a, b)


def Path(order: int) -> Factor:
    return Factor(Kind.PATH, order)


def Cycle(order: int) -> Factor:
    return Factor(Kind.CYCLE, order)


class Vertex(NamedTuple):
    x: int
    y: int


_DESCRIPTOR = re.compile(r"^\s*([PC])(\d+)\s*[xX]\s*([PC])(\d+)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class ProductGraph:
    """Cartesian product ``fx x fy`` of two paths/cycles."""

    fx: Factor
    fy: Factor

    @classmethod
    def parse(cls, text: str) -> "ProductGraph":
        """Parse a descriptor such as ``C15xC15`` or ``p4xc9``."""
        m = _DESCRIPTOR.match(text)
        if m is None:
            raise InputError(f"bad graph descriptor {text!r}; expected e.g. P4xC9 or C15xC15")
        kx, sx, ky, sy = m.groups()
        return cls(Factor(Kind(kx.upper()), int(sx)), Factor(Kind(ky.upper()), int(sy)))

    @classmethod
    def torus(cls, s: int, t: int) -> "ProductGraph":
        return cls(Cycle(s), Cycle(t))

    @classmethod
    def cylinder(cls, s: int, t: int) -> "ProductGraph":
        return cls(Path(s), Cycle(t))

    @classmethod
    def grid(cls, s: int, t: int) -> "ProductGraph":
        return cls(Path(s), Path(t))

    def __str__(self):
        return f"{self.fx}x{self.fy}"

    @property
    def s(self) -> int:
        return self.fx.order

    @property
    def t(self) -> int:
        return self.fy.order

    @property
    def n(self) -> int:
        return self.s * self.t

    def vertices(self):
        """All vertices in lexicographic (x, y) order."""
        return [Vertex(x, y) for x in range(self.s) for y in range(self.t)]

    def check(self, v) -> Vertex:
        x, y = v
        self.fx.check(x)
        self.fy.check(y)
        return Vertex(x, y)

    def neighbors(self, v: Vertex) -> list[Vertex]:
        out = []
        for f, (dx, dy) in ((self.fx, (1, 0)), (self.fy, (0, 1))):
            for sign in (1, -1):
                x, y = v.x + sign * dx, v.y + sign * dy
                if f.is_cycle:
                    x %= self.s
                    y %= self.t
                if 0 <= x < self.s and 0 <= y < self.t and (x, y) != v:
                    w = Vertex(x, y)
                    if w not in out:
                        out.append(w)
        return out

    # Bit layout shared by the visibility and solver modules: vertex (x, y)
    # is bit ``y * s + x`` (rows are y, laid out row-major).

    def bit(self, v) -> int:
        return 1 << (v[1] * self.s + v[0])

    def index(self, v) -> int:
        return v[1] * self.s + v[0]

    def vertex_at(self, idx: int) -> Vertex:
        return Vertex(idx % self.s, idx // self.s)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        row = sum(1 << (y * self.s) for y in range(self.t))
        return tuple(row << x for x in range(self.s))

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        row = (1 << self.s) - 1
        return tuple(row << (y * self.s) for y in range(self.t))

    def __hash__(self):
        return hash((self.fx, self.fy))


def circ_dist(n: int, k: int, s: int) -> int:
    """Length of the shorter arc between positions ``n`` and ``k`` on ``C_s``."""
    if s < 3:
        raise InputError(f"cycle order must be >= 3, got {s}")
    if not (0 <= n < s and 0 <= k < s):
        raise InputError(f"coordinates ({n}, {k}) out of range for C{s}")
    d = abs(n - k)
    return min(d, s - d)


def lin_interval(k: int, n: int) -> tuple[int, ...]:
    if k < 0 or n < 0:
        raise InputError(f"negative coordinate in ({k}, {n})")
    return tuple(range(min(k, n), max(k, n) + 1))


@lru_cache(maxsize=1 << 16)
def circ_interval(k: int, n: int, s: int) -> tuple[int, ...]:
    """Coordinates lying on some shortest ``k``-``n`` arc of ``C_s``, sorted.

    For antipodal ``k, n`` both arcs are geodesic, so the whole cycle is returned.
    """
    d = circ_dist(k, n, s)
    if 2 * d == s:
        return tuple(range(s))
    step = 1 if (n - k) % s == d else -1
    return tuple(sorted((k + step * i) % s for i in range(d + 1)))


def dist(g: ProductGraph, u, v) -> int:
    u, v = g.check(u), g.check(v)
    return g.fx.dist(u.x, v.x) + g.fy.dist(u.y, v.y)


def interval(g: ProductGraph, u, v) -> set[Vertex]:
    """Vertices on at least one shortest ``u``-``v`` path."""
    u, v = g.check(u), g.check(v)
    xs = g.fx.interval(u.x, v.x)
    ys = g.fy.interval(u.y, v.y)
    return {Vertex(x, y) for x in xs for y in ys}
