"""Published mutual-visibility numbers of cylinders and tori.

Table rows are transcribed with ``None`` standing for a ditto mark, which
repeats the nearest value to its left.
"""

from __future__ import annotations

from typing import NamedTuple

from .grid import Kind, ProductGraph

_ = None

# P_s x C_t: row t, columns s = 3..12.
CYLINDER_COLUMNS = tuple(range(3, 13))
CYLINDER_TABLE: dict[int, tuple] = {
    3: (6, _, _, _, _, _, _, _, _, _),
    4: (7, 8, _, _, _, _, _, _, _, _),
    5: (7, 9, 10, _, _, _, _, _, _, _),
    6: (8, 10, 12, _, _, _, _, _, _, _),
    7: (8, 10, 12, 14, _, _, _, _, _, _),
    8: (9, 12, 14, 16, _, _, _, _, _, _),
    9: (9, 12, 14, 16, 17, 18, _, _, _, _),
    10: (9, 12, 15, 18, 19, 20, _, _, _, _),
    11: (9, 12, 15, 18, 19, 22, _, _, _, _),
    12: (9, 12, 15, 18, 21, 24, _, _, _, _),
    13: (9, 12, 15, 18, 21, 24, 26, _, _, _),
    14: (9, 12, 15, 18, 21, 24, 27, 28, _, _),
    15: (9, 12, 15, 18, 21, 24, 27, 30, _, _),
    16: (9, 12, 15, 18, 21, 24, 27, 30, 32, _),
    17: (9, 12, 15, 18, 21, 24, 27, 30, 33, 34),
}

# C_s x C_t with s >= t: row t, columns s = 3..14 (cells with s < t are blank).
TORUS_COLUMNS = tuple(range(3, 15))
TORUS_TABLE: dict[int, tuple] = {
    3: (6, 7, 7, 9, _, _, _, _, _, _, _, _),
    4: (9, 10, 11, 11, 12, _, _, _, _, _, _),
    5: (10, 12, 13, 15, _, _, _, _, _, _),
    6: (14, 15, 17, 18, _, _, _, _, _),
    7: (16, 18, 18, 20, 20, 21, _, _),
    8: (21, 21, 23, 23, 24, _, _),
    9: (22, 25, 25, 27, _, _),
    10: (27, 27, 30, _, _),
    11: (29, 32, 33, _),
    12: (36, _, _),
    13: (38, 39),
}

# mu(C_s x C_t) = 3t once s reaches this threshold.
TORUS_SATURATION = {3: 6, 4: 8, 5: 8, 6: 9, 7: 12, 8: 12, 9: 12, 10: 12, 11: 13, 13: 14}

P2_CYLINDER = {3: 4, 4: 5, 5: 5}


class KnownValue(NamedTuple):
    value: int
    source: str


def _resolve(row: tuple) -> list[int]:
    out: list[int] = []
    for v in row:
        out.append(out[-1] if v is None else v)
    return out


def cylinder_table_value(s: int, t: int) -> int | None:
    row = CYLINDER_TABLE.get(t)
    if row is None or not 3 <= s <= 12:
        return None
    return _resolve(row)[s - 3]


def torus_table_value(s: int, t: int) -> int | None:
    """Table entry for ``C_s x C_t``; the factors may come in either order."""
    s, t = max(s, t), min(s, t)
    row = TORUS_TABLE.get(t)
    if row is None or s > 14:
        return None
    return _resolve(row)[s - t]


def _cylinder(s: int, t: int) -> KnownValue | None:
    # s: path order, t: cycle order
    if s == 2:
        return KnownValue(P2_CYLINDER.get(t, 6), "P2 x C_t closed form")
    v = cylinder_table_value(s, t)
    if v is not None:
        return KnownValue(v, "cylinder table")
    if t in CYLINDER_TABLE and s > 12:
        # every row already reaches 2t at s = 12; larger s cannot exceed it
        return KnownValue(2 * t, "cylinder table, row saturated at 2t")
    if t >= 6 and s + 1 >= t:
        return KnownValue(2 * t, "2t for s + 1 >= t >= 6")
    return None


def _torus(s: int, t: int) -> KnownValue | None:
    s, t = max(s, t), min(s, t)
    v = torus_table_value(s, t)
    if v is not None:
        return KnownValue(v, "torus table")
    if t in TORUS_SATURATION and s >= TORUS_SATURATION[t]:
        return KnownValue(3 * t, f"3t for small t once s >= {TORUS_SATURATION[t]}")
    if t >= 14 or t == 12:
        return KnownValue(3 * t, "3t for s >= t")
    return None


def known_mu(s: int, t: int, kinds: str | tuple[Kind, Kind] = "PC") -> KnownValue | None:
    """Published value of mu for the product of orders ``s`` and ``t``.

    ``kinds`` names the factor kinds in order, e.g. ``"PC"`` for ``P_s x C_t``.
    Grids ``P x P`` are not covered and give ``None``.
    """
    if isinstance(kinds, str):
        kx, ky = Kind(kinds[0].upper()), Kind(kinds[1].upper())
    else:
        kx, ky = kinds
    if kx is Kind.CYCLE and ky is Kind.CYCLE:
        return _torus(s, t)
    if kx is Kind.PATH and ky is Kind.CYCLE:
        return _cylinder(s, t)
    if kx is Kind.CYCLE and ky is Kind.PATH:
        return _cylinder(t, s)
    return None


def known_mu_for(g: ProductGraph) -> KnownValue | None:
    return known_mu(g.s, g.t, (g.fx.kind, g.fy.kind))
