"""Command-line driver: ``clusterpoly <command> [options]``.

Exit codes: 0 all checks pass, 1 a verification mismatch, 2 a usage or
input/output problem.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import golden
from .linalg import format_rational

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("clusterpoly")


@dataclass
class RunReport:
    command: str
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    payload: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if not self.details else "fail"

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "details": self.details,
            "elapsed": round(self.elapsed, 3),
            **self.payload,
        }


class UsageError(Exception):
    pass


def format_matrix(rows: list[list]) -> str:
    """Right-aligned columns, one text row per matrix row."""
    if not rows or not rows[0]:
        return "[]"
    cells = [[format_rational(x) for x in r] for r in rows]
    width = max(len(c) for r in cells for c in r)
    return "\n".join("[ " + " ".join(c.rjust(width) for c in r) + " ]" for r in cells)


def _write(path: str | None, data: dict) -> None:
    if path is None:
        return
    try:
        Path(path).write_text(json.dumps(data, indent=1) + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


# --------------------------------------------------------------------------
# commands


def cmd_exchange_graph(args) -> RunReport:
    from .flag import sl3_exchange_graph, sl4_exchange_graph

    report = RunReport("exchange-graph")
    g = sl3_exchange_graph() if args.n == 3 else sl4_exchange_graph()
    expected = (2, 1) if args.n == 3 else (14, 21)
    if (g.node_count, g.edge_count) != expected:
        report.details.append(f"{g.node_count} nodes and {g.edge_count} edges, expected {expected[0]} and {expected[1]}")
    report.payload = g.to_dict()
    _write(args.out, report.payload)
    if not args.json:
        print(f"SL{args.n}: {g.node_count} seeds, {g.edge_count} edge{'' if g.edge_count == 1 else 's'}")
        for a, b in sorted(tuple(sorted(int(g.nodes[i].label.lstrip("i")) for i in e)) for e in g.undirected_edges()):
            print(f"  {a} -- {b}")
    return report


def _polytope_for(args):
    from .flag import base_polytope_sl3, compute_all_polytopes

    if args.n == 3:
        return "SL3", base_polytope_sl3()
    if args.seed is None:
        raise UsageError("--seed is required for n=4")
    if not 0 <= args.seed <= 13:
        raise UsageError(f"seed label {args.seed} out of range 0..13")
    return f"t{args.seed}", compute_all_polytopes()[args.seed]


def cmd_polytope(args) -> RunReport:
    report = RunReport("polytope")
    name, p = _polytope_for(args)
    report.payload = {"seed": name, "polytope": p.to_dict()}
    _write(args.out, report.payload)
    if args.json:
        return report
    normals = [h.normal for h in p.facets]
    print(f"{name}: {p.n_facets} facets, {p.n_vertices} vertices; <g, u> >= -1 for the columns u")
    print(format_matrix([list(r) for r in zip(*normals)]))
    if args.format == "matrix":
        return report
    print("offsets:", " ".join(format_rational(h.offset) for h in p.facets))
    print("vertices:")
    for v in p.vertices:
        print("  (" + ", ".join(format_rational(x) for x in v) + ")")
    return report


def cmd_verify_all(args) -> RunReport:
    from .verify import CHECKS, run_checks

    only = [name for chunk in args.only or [] for name in chunk.split(",") if name]
    unknown = [n for n in only if n not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    report = RunReport("verify-all")
    results = run_checks(only or None)
    for r in results:
        report.details.extend(f"[{r.name}] {d}" for d in r.details)
        if not args.json:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark}  {r.criterion:2d}  {r.name:15s} {r.description}  ({r.elapsed:.2f}s)")
            for d in r.details:
                print(f"        {d}")
    report.payload = {"checks": [r.to_dict() for r in results]}
    _write(args.out, report.payload)
    return report


def cmd_classify(args) -> RunReport:
    from .verify import classification

    report = RunReport("classify")
    c = classification()
    if len(c.classes) != 5:
        report.details.append(f"{len(c.classes)} classes, expected 5")
    report.payload = c.to_dict()
    _write(args.out, report.payload)
    if args.json:
        return report
    for cls in c.classes:
        print("class", "{" + ", ".join(f"t{k}" for k in cls) + "}")
    if args.orbits:
        print(f"{len(c.orbit_structure)} orbits under the two involutions:")
        for orbit in c.orbit_structure:
            print("  {" + ", ".join(f"t{k}" for k in orbit) + "}")
    if args.corollary_3_4:
        from .flag import compute_all_polytopes

        twelve = [k for k, p in compute_all_polytopes().items() if p.n_facets == 12]
        print("12 facets exactly at", "{" + ", ".join(f"t{k}" for k in twelve) + "}")
        report.payload["twelve_facets"] = twelve
    return report


def cmd_reduced_words(args) -> RunReport:
    from .flag import move_graph, reduced_words, two_move_classes

    report = RunReport("reduced-words")
    words = reduced_words(args.n)
    g = move_graph(args.n)
    classes = two_move_classes(args.n)
    moves = {kind: sum(1 for *_, d in g.edges(data=True) if d["move"] == kind) for kind in ("2-move", "3-move")}
    report.payload = {
        "n": args.n,
        "count": len(words),
        "words": [list(w) for w in words],
        "edges": moves,
        "two_move_classes": [[list(w) for w in c] for c in classes],
    }
    _write(args.out, report.payload)
    if not args.json:
        print(f"{len(words)} reduced words of the longest element of S_{args.n}; "
              f"{moves['2-move']} 2-move and {moves['3-move']} 3-move edges; {len(classes)} 2-move classes")
        if len(words) <= 64:
            for w in words:
                print("  " + "".join(map(str, w)))
    return report


def cmd_fingerprint(args) -> RunReport:
    from .equivalence import fingerprint

    report = RunReport("fingerprint")
    name, p = _polytope_for(args)
    fp = fingerprint(p)
    report.payload = {"seed": name, "fingerprint": fp.to_dict()}
    _write(args.out, report.payload)
    if not args.json:
        print(f"{name}")
        print("  f-vector        ", fp.f_vector)
        print("  degrees         ", dict(fp.degree_histogram))
        print("  facets          ", fp.facet_count)
        print("  lattice points  ", fp.lattice_point_counts, "(dilations 1 and 2)")
    return report


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterpoly", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_choices=(3, 4), n_default=4):
        p.add_argument("--n", type=int, choices=n_choices, default=n_default)
        p.add_argument("--json", action="store_true", help="print the machine-readable report")
        p.add_argument("--out", help="also write the JSON payload to this file")
        return p

    p = common(sub.add_parser("exchange-graph", help="build the exchange graph"))
    p.set_defaults(func=cmd_exchange_graph)

    p = common(sub.add_parser("polytope", help="facets and vertices of the polytope at a seed"))
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("matrix", "json", "full"), default="full")
    p.set_defaults(func=cmd_polytope)

    p = common(sub.add_parser("fingerprint", help="unimodular invariants of the polytope at a seed"))
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_fingerprint)

    p = common(sub.add_parser("verify-all", help="check every result against the golden data"))
    p.add_argument("--only", action="append", help="comma-separated check names (repeatable)")
    p.set_defaults(func=cmd_verify_all)

    p = common(sub.add_parser("classify", help="unimodular classes of the 14 polytopes"))
    p.add_argument("--orbits", action="store_true", help="list the orbits of the two involutions")
    p.add_argument("--corollary-3-4", dest="corollary_3_4", action="store_true",
                   help="list the seeds whose polytope has 12 facets")
    p.set_defaults(func=cmd_classify)

    p = common(sub.add_parser("reduced-words", help="reduced words of the longest permutation"), (2, 3, 4, 5, 6))
    p.set_defaults(func=cmd_reduced_words)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "format", None) == "json":
        args.json = True
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (UsageError, golden.GoldenDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.elapsed = time.perf_counter() - start
    if args.json:
        print(json.dumps(report.to_dict(), indent=1))
    elif report.details and report.command != "verify-all":
        for d in report.details:
            print("mismatch:", d)
    return EXIT_OK if report.status == "pass" else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
