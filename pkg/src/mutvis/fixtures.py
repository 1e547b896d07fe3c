"""Witness sets found by this package's own search and shipped as data.

``cylinders.json`` covers ``P_{t-1} x C_t`` for ``6 <= t <= 12``, where no
closed-form construction is available.  ``tori.json`` holds ``3t``-sets on
``C_s x C_t`` at the published saturation thresholds for small ``t``; an entry
may carry ``thirds`` (column block widths) when it can be widened by fibre
insertion.  Regenerate with ``mutvis search --cylinders`` / ``--tori``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .visibility import VertexSet

CYLINDER_FILE = "cylinders.json"
TORUS_FILE = "tori.json"


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    try:
        text = resources.files("mutvis.data").joinpath(name).read_text()
    except FileNotFoundError:
        return {}
    return json.loads(text)


def cylinder_fixture(t: int) -> VertexSet | None:
    entry = _load(CYLINDER_FILE).get(str(t))
    return None if entry is None else VertexSet.from_dict(entry)


def torus_fixtures(t: int) -> list[tuple[VertexSet, tuple[int, int, int] | None]]:
    """All shipped ``C_s x C_t`` witnesses for this ``t``, with their thirds if widenable."""
    out = []
    for entry in _load(TORUS_FILE).values():
        m = VertexSet.from_dict(entry)
        if m.graph.t == t:
            thirds = entry.get("thirds")
            out.append((m, None if thirds is None else tuple(thirds)))
    return out


def fixture_sets(name: str = CYLINDER_FILE) -> dict[str, VertexSet]:
    return {key: VertexSet.from_dict(entry) for key, entry in _load(name).items()}
