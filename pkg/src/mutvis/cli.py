"""``mutvis`` command line.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 unsupported size, 4 partial result after a timeout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import constructions as cons
from .fixtures import CYLINDER_FILE, TORUS_FILE, fixture_sets
from .grid import InputError, ProductGraph
from .known import CYLINDER_TABLE, TORUS_SATURATION, TORUS_TABLE, known_mu_for
from .solver import local_search, mu_exact, mu_lower_bound, upper_bound
from .visibility import RefusalError, VertexSet, is_mutual_visibility_set

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_TIMEOUT = 0, 1, 2, 3, 4


def _read_set(path: str, graph: ProductGraph | None) -> VertexSet:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    if text.lstrip().startswith("{"):
        return VertexSet.from_json(text, graph)
    if graph is None:
        raise InputError("grid input needs --graph")
    return VertexSet.from_grid(graph, text)


def _emit(m: VertexSet, fmt: str) -> None:
    print(m.to_grid() if fmt == "grid" else m.to_json())


def _fmt_pair(pair) -> str:
    (a, b) = pair
    return f"({a.x},{a.y}) ({b.x},{b.y})"


def cmd_verify(args) -> int:
    graph = ProductGraph.parse(args.graph) if args.graph else None
    m = _read_set(args.set, graph)
    report = is_mutual_visibility_set(m.graph, m)
    if report.ok:
        print(f"OK (n={len(m)})")
        return EXIT_OK
    print(f"FAIL (n={len(m)}): {_fmt_pair(report.failing_pair)} not mutually visible")
    return EXIT_FAIL


def _build(args) -> VertexSet:
    t = args.t
    if args.cylinder:
        m = cons.construct_cylinder(t)
        if args.s is not None and args.s != m.graph.s:
            m = cons.embed_cylinder(m, args.s)
        return m
    if args.s is None or args.s == t:
        return cons.construct_torus_square(t)
    return cons.construct_torus(args.s, t)


def cmd_construct(args) -> int:
    try:
        m = _build(args)
    except cons.UnsupportedSize as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        hint = f"P{args.t - 1}xC{args.t}" if args.cylinder else f"C{args.s or args.t}xC{args.t}"
        print(f"hint: try `mutvis mu --graph {hint}` for an exact or heuristic search", file=sys.stderr)
        return EXIT_UNSUPPORTED
    if not args.no_verify:
        report = is_mutual_visibility_set(m.graph, m)
        if not report.ok:
            print(f"construction failed verification: {_fmt_pair(report.failing_pair)}", file=sys.stderr)
            return EXIT_FAIL
    _emit(m, args.format)
    return EXIT_OK


def cmd_mu(args) -> int:
    g = ProductGraph.parse(args.graph)
    if g.n > args.cap and not args.force:
        lb, w = mu_lower_bound(g, seed=args.seed)
        print(
            json.dumps(
                {"graph": str(g), "mu": None, "lower": lb, "upper": upper_bound(g), "witness": [[v.x, v.y] for v in w]}
            )
        )
        print(f"{g} has {g.n} vertices (cap {args.cap}); reported bounds only, use --force to search", file=sys.stderr)
        return EXIT_TIMEOUT
    seed = mu_lower_bound(g, seed=args.seed)[1]
    report = mu_exact(g, timeout=args.timeout, seed_lower_bound=seed, cap=args.cap, force=args.force)
    if args.format == "grid":
        print(f"{g}: mu {'=' if report.exhaustive else '>='} {report.mu}")
        print(report.witness.to_grid())
    else:
        print(json.dumps(report.to_dict()))
    return EXIT_OK if report.exhaustive else EXIT_TIMEOUT


def table_cell(g: ProductGraph, timeout: float | None, cap: int, seed: int = 0) -> tuple[str, int | None, bool]:
    """Text, value and exactness for one table cell."""
    if g.n <= cap:
        lb_w = mu_lower_bound(g, seed=seed)[1]
        r = mu_exact(g, timeout=timeout, seed_lower_bound=lb_w, cap=cap)
        if r.exhaustive:
            return str(r.mu), r.mu, True
        lb = r.mu
    else:
        lb = mu_lower_bound(g, seed=seed)[0]
    ub = upper_bound(g)
    if lb == ub:
        return str(lb), lb, True
    return f">={lb}/<={ub}", lb, False


def cmd_table(args) -> int:
    which = args.which.upper()
    min_s = args.min_s if args.min_s is not None else (2 if which == "PC" else 3)
    ts = range(3, args.max_t + 1)
    ss = range(min_s, args.max_s + 1)
    width = 12
    print(f"{'t' + chr(92) + 's':>6}" + "".join(f"{s:>{width}}" for s in ss))
    mismatches = []
    for t in ts:
        cells = []
        for s in ss:
            if which == "CC" and s < t:
                cells.append(" " * width)
                continue
            g = ProductGraph.parse(f"{'P' if which == 'PC' else 'C'}{s}xC{t}")
            text, value, exact = table_cell(g, args.timeout, args.cap, args.seed)
            known = known_mu_for(g)
            mark = ""
            if known is not None:
                if (exact and value != known.value) or (not exact and value > known.value):
                    mark = "!"
                    mismatches.append((str(g), value, known.value, known.source))
                elif exact:
                    mark = "*"
            cells.append(f"{text + mark:>{width}}")
        print(f"{t:>6}" + "".join(cells), flush=True)
    print("* matches published value, ! MISMATCH")
    for g, got, want, src in mismatches:
        print(f"MISMATCH {g}: computed {got}, published {want} ({src})", file=sys.stderr)
    return EXIT_FAIL if mismatches else EXIT_OK


def cmd_render(args) -> int:
    graph = ProductGraph.parse(args.graph) if args.graph else None
    m = _read_set(args.set, graph)
    _emit(m, args.format)
    return EXIT_OK


class CheckFailure(Exception):
    pass


def _require(m: VertexSet, label: str, size: int) -> None:
    if len(m) != size:
        raise CheckFailure(f"{label}: expected {size} vertices, got {len(m)}")
    report = is_mutual_visibility_set(m.graph, m)
    if not report.ok:
        raise CheckFailure(f"{label}: pair {_fmt_pair(report.failing_pair)} not mutually visible")


def _check_known(m: VertexSet, label: str) -> None:
    known = known_mu_for(m.graph)
    if known is not None and known.value != len(m):
        raise CheckFailure(f"{label}: |M| = {len(m)} but published mu = {known.value} ({known.source})")


def run_checks(ceiling: int, extra: list[VertexSet], say=print) -> int:
    count = 0
    for t in range(3, ceiling + 1):
        for fam in cons.Family:
            if fam.build is None or not fam.applies(t):
                continue
            m = cons.construct_torus_square(t)
            label = f"{fam.name} t={t}"
            _require(m, label, 3 * t)
            _check_known(m, label)
            alt = cons.torus_column_form(t)
            if alt is not None and alt != m:
                raise CheckFailure(f"{label}: row and column formulas disagree")
            for s in (t + 1, t + t // 3, 2 * t + 1):
                e = cons.construct_torus(s, t)
                _require(e, f"{label} widened to C{s}", 3 * t)
                _check_known(e, f"{label} widened to C{s}")
                count += 1
            count += 1
        if t >= 13:
            fam = cons.Family.cylinder(t)
            base = cons.construct_torus_base(t)
            _require(base, f"{fam.name} base t={t}", 2 * (t - 3))
            m = cons.construct_cylinder(t)
            _require(m, f"{fam.name} t={t}", 2 * t)
            _check_known(m, f"{fam.name} t={t}")
            _require(cons.embed_cylinder(m, t + 5), f"{fam.name} t={t} in P{t + 5}", 2 * t)
            count += 3
    for key, m in sorted(fixture_sets().items(), key=lambda kv: int(kv[0])):
        t = int(key)
        _require(m, f"fixture P{t - 1}xC{t}", 2 * t)
        _check_known(m, f"fixture P{t - 1}xC{t}")
        count += 1
    for key, m in sorted(fixture_sets(TORUS_FILE).items()):
        _require(m, f"fixture {m.graph}", 3 * m.graph.t)
        _check_known(m, f"fixture {m.graph}")
        count += 1
    for t, row in CYLINDER_TABLE.items():
        last = [v for v in row if v is not None][-1]
        if last != 2 * t:
            raise CheckFailure(f"cylinder table row t={t} ends at {last}, not 2t")
    for t, row in TORUS_TABLE.items():
        last = [v for v in row if v is not None][-1]
        if last != 3 * t:
            raise CheckFailure(f"torus table row t={t} ends at {last}, not 3t")
    for i, m in enumerate(extra):
        report = is_mutual_visibility_set(m.graph, m)
        if not report.ok:
            raise CheckFailure(f"extra set #{i} on {m.graph}: pair {_fmt_pair(report.failing_pair)} not mutually visible")
        count += 1
    say(f"OK: {count} constructions verified (ceiling t <= {ceiling})")
    return count


def cmd_check(args) -> int:
    extra = [_read_set(p, None) for p in args.set or []]
    start = time.monotonic()
    try:
        run_checks(args.ceiling, extra)
    except CheckFailure as exc:
        print(f"FAIL: {exc}")
        return EXIT_FAIL
    print(f"({time.monotonic() - start:.1f} s)", file=sys.stderr)
    return EXIT_OK


def _search_witness(g: ProductGraph, size: int, args) -> VertexSet | None:
    for attempt in range(args.attempts):
        w = local_search(g, size, seed=args.seed + attempt, timeout=args.timeout)
        if w is not None:
            return w
    return None


def _search_cylinders(args) -> tuple[dict, bool]:
    out = {}
    for t in range(6, 13):
        g = ProductGraph.cylinder(t - 1, t)
        w = _search_witness(g, 2 * t, args)
        if w is None:
            print(f"no {2 * t}-set found on {g}", file=sys.stderr)
            return out, False
        _require(w, str(g), 2 * t)
        out[str(t)] = w.to_dict()
        print(f"{g}: {len(w)}", file=sys.stderr)
    return out, True


def _search_tori(args) -> tuple[dict, bool]:
    cells = dict(TORUS_SATURATION)
    cells.setdefault(12, 12)
    out = {}
    complete = True
    for t, s in sorted(cells.items()):
        g = ProductGraph.torus(s, t)
        entry = None
        if s == t:
            # square formulas can verify below their stated minimum t
            fam = cons._TORUS_BY_RESIDUE[t % 6]
            m = VertexSet(g, fam.build(t))
            if len(m) == 3 * t and is_mutual_visibility_set(g, m).ok:
                entry = dict(m.to_dict(), thirds=list(fam.thirds(t)))
        if entry is None:
            w = _search_witness(g, 3 * t, args)
            if w is None:
                print(f"no {3 * t}-set found on {g}", file=sys.stderr)
                complete = False
                continue
            _require(w, str(g), 3 * t)
            entry = w.to_dict()
        out[f"{s}x{t}"] = entry
        print(f"{g}: {3 * t}", file=sys.stderr)
    return out, complete


def cmd_search(args) -> int:
    if args.cylinders or args.tori:
        out, complete = _search_cylinders(args) if args.cylinders else _search_tori(args)
        text = json.dumps(out, indent=1)
        if args.out:
            Path(args.out).write_text(text + "\n")
        else:
            print(text)
        return EXIT_OK if complete else EXIT_TIMEOUT
    if not args.graph or args.size is None:
        raise InputError("search needs --graph and --size (or --cylinders / --tori)")
    g = ProductGraph.parse(args.graph)
    w = local_search(g, args.size, seed=args.seed, timeout=args.timeout)
    if w is None:
        print(f"no {args.size}-set found on {g}", file=sys.stderr)
        return EXIT_TIMEOUT
    _emit(w, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mutvis", description="Mutual-visibility sets in products of paths and cycles.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "grid"), default="json")

    sp = sub.add_parser("verify", help="check that a vertex set is a mutual-visibility set")
    sp.add_argument("--graph", help="descriptor such as C15xC15 (taken from the file when omitted)")
    sp.add_argument("--set", required=True, help="vertex set file (JSON or grid), '-' for stdin")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="emit a closed-form construction")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--s", type=int, help="wider first factor (torus) or longer path (cylinder)")
    sp.add_argument("--cylinder", action="store_true", help="P_{t-1} x C_t instead of a torus")
    sp.add_argument("--no-verify", action="store_true")
    fmt(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("mu", help="exact mutual-visibility number by branch and bound")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--timeout", type=float)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cap", type=int, default=64, help="largest vertex count searched exhaustively")
    sp.add_argument("--force", action="store_true")
    fmt(sp)
    sp.set_defaults(func=cmd_mu)

    sp = sub.add_parser("table", help="recompute a block of the published tables")
    sp.add_argument("--which", choices=("PC", "CC", "pc", "cc"), required=True)
    sp.add_argument("--max-t", type=int, required=True)
    sp.add_argument("--max-s", type=int, required=True)
    sp.add_argument("--min-s", type=int)
    sp.add_argument("--timeout", type=float, default=60.0, help="per cell, seconds")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cap", type=int, default=64)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("render", help="convert a vertex set between JSON and grid")
    sp.add_argument("--graph")
    sp.add_argument("--set", required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("check", help="verify every construction family up to a ceiling")
    sp.add_argument("--ceiling", type=int, default=40)
    sp.add_argument("--set", action="append", help="additional vertex set file that must verify")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("search", help="heuristic search for a large set")
    sp.add_argument("--graph")
    sp.add_argument("--size", type=int)
    sp.add_argument("--cylinders", action="store_true", help=f"regenerate the shipped {CYLINDER_FILE} witnesses")
    sp.add_argument("--tori", action="store_true", help=f"regenerate the shipped {TORUS_FILE} witnesses")
    sp.add_argument("--out")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--timeout", type=float, default=120.0)
    sp.add_argument("--attempts", type=int, default=20)
    fmt(sp)
    sp.set_defaults(func=cmd_search)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except cons.UnsupportedSize as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InputError, RefusalError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
