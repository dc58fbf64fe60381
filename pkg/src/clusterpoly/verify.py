"""Golden-data checks, one per published result.

Every check returns a list of human-readable mismatches; an empty list is a
pass.  The registry order is the order of the acceptance criteria.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable

import networkx as nx

from . import golden
from .equivalence import (
    Classification,
    catalog_maps,
    class_preserving_automorphisms,
    classify,
    fingerprint,
    parse_involutions,
    search_signed_permutation_map,
    verify_unimodular_map,
)
from .flag import (
    base_polytope_sl3,
    compute_all_polytopes,
    gp_polytope,
    move_closure,
    move_graph,
    reduced_words,
    sl3_exchange_graph,
    sl4_exchange_graph,
    sl4_pipeline,
    transport_string_polytope,
    two_move_classes,
)
from .linalg import primitive_integer_vector
from .polytope import (
    Polytope,
    f_vector,
    interior_lattice_points,
    is_combinatorially_isomorphic,
    is_lattice_polytope,
    is_reflexive,
    vertex_degree_histogram,
    vertices_by_subsets,
)
from .seeds import mutate_epsilon
from .tropical import apply_tropical, check_sign_convention, tropical_map

__all__ = ["CheckResult", "CHECKS", "run_checks", "column_diff", "classification"]


@dataclass
class CheckResult:
    name: str
    criterion: int
    description: str
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.details

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "criterion": self.criterion,
            "status": "pass" if self.passed else "fail",
            "details": self.details,
            "elapsed": round(self.elapsed, 3),
        }


def column_diff(expected, actual, what: str = "") -> list[str]:
    """Differences between two multisets of primitive normal columns."""
    prefix = f"{what}: " if what else ""
    exp = Counter(_prim(c) for c in expected)
    act = Counter(_prim(c) for c in actual)
    out = [f"{prefix}column {c} expected but not produced" for c in sorted((exp - act).elements())]
    out += [f"{prefix}column {c} produced but not expected" for c in sorted((act - exp).elements())]
    return out


def _prim(col) -> tuple[int, ...]:
    return tuple(int(x) for x in primitive_integer_vector(col)[0])


def _columns(matrix) -> list[tuple]:
    return list(zip(*matrix))


def _normals(p: Polytope) -> list[tuple]:
    return [h.normal for h in p.facets]


@lru_cache(maxsize=None)
def _classification(key: str) -> Classification:
    inv = parse_involutions(golden.load("figure4_edges.json")["involutions"])
    return classify(compute_all_polytopes(), inv)


def classification() -> Classification:
    return _classification(str(golden.golden_dir()))


def _drawn_graph() -> nx.Graph:
    d = golden.load("figure4_edges.json")
    g = nx.Graph()
    g.add_nodes_from(d["nodes"])
    g.add_edges_from(tuple(e) for e in d["edges"])
    return g


# --------------------------------------------------------------------------
# checks


def check_exchange_graph() -> list[str]:
    out = []
    g3 = sl3_exchange_graph()
    if g3.node_count != 2:
        out.append(f"SL3 exchange graph has {g3.node_count} seed classes, expected 2")
    g4 = sl4_exchange_graph()
    if g4.node_count != 14:
        out.append(f"SL4 exchange graph has {g4.node_count} seed classes, expected 14")
    if g4.edge_count != 21:
        out.append(f"SL4 exchange graph has {g4.edge_count} edges, expected 21")
    if not g4.is_regular(3):
        out.append("SL4 exchange graph is not 3-regular")
    drawn = _drawn_graph()
    ours = g4.to_networkx(labels=True)
    ours = nx.relabel_nodes(ours, {lab: int(lab) for lab in ours.nodes})
    if set(map(frozenset, ours.edges)) != set(map(frozenset, drawn.edges)):
        out.append("labelled SL4 exchange graph differs from the drawn adjacency list")
    if not nx.is_isomorphic(ours, drawn):
        out.append("SL4 exchange graph is not isomorphic to the drawn one")
    return out


def check_base_polytope() -> list[str]:
    direct = _columns(golden.matrix("eq2_2.json"))
    transported = _normals(transport_string_polytope())
    out = column_diff(direct, transported, "base polytope")
    if len(direct) != 12:
        out.append(f"golden base matrix has {len(direct)} columns, expected 12")
    return out


def check_transport() -> list[str]:
    polys = compute_all_polytopes()
    out = []
    expected_sizes = {1: 13, 2: 13, 3: 13, 4: 14, 5: 14, 6: 13}
    for seed, size in expected_sizes.items():
        cols = _columns(golden.case_matrix(seed))
        if len(cols) != size:
            out.append(f"golden matrix for t{seed} has {len(cols)} columns, expected {size}")
        out += column_diff(cols, _normals(polys[seed]), f"t{seed}")
    return out


def check_formulas() -> list[str]:
    pipe = sl4_pipeline()
    seeds = {lab: r.seed for lab, r in pipe.realizations.items()}
    return check_sign_convention(seeds, golden.load("mu_formulas.json")["formulas"])


def check_fvectors() -> list[str]:
    polys = compute_all_polytopes()
    out = []
    for row in golden.load("table2.json")["classes"]:
        for seed in row["seeds"]:
            got = list(f_vector(polys[seed]).as_tuple())
            if got != row["f_vector"]:
                out.append(f"t{seed}: f-vector {got}, expected {row['f_vector']}")
    return out


def check_degrees() -> list[str]:
    polys = compute_all_polytopes()
    table = golden.load("table3.json")["histograms"]
    case_seeds = {int(c["case"]): c["seeds"] for c in golden.load("table2.json")["classes"]}
    out = []
    for case, hist in table.items():
        expected = {int(k): v for k, v in hist.items()}
        edges_needed = sum(d * c for d, c in expected.items())
        for seed in case_seeds[int(case)]:
            p = polys[seed]
            got = vertex_degree_histogram(p)
            if got != expected:
                out.append(f"Case {case}, t{seed}: degree histogram {got}, expected {expected}")
            f1 = f_vector(p)[1]
            if edges_needed != 2 * f1:
                out.append(
                    f"Case {case}, t{seed}: expected histogram has degree sum {edges_needed}, "
                    f"but {f1} edges force {2 * f1}"
                )
    a, b = case_seeds[2][0], case_seeds[5][0]
    if is_combinatorially_isomorphic(polys[a], polys[b])[0]:
        out.append(f"t{a} and t{b} are combinatorially isomorphic")
    return out


def check_reflexive() -> list[str]:
    out = []
    polys = {f"t{k}": p for k, p in compute_all_polytopes().items()}
    polys["SL3"] = base_polytope_sl3()
    for name, p in polys.items():
        if not is_lattice_polytope(p):
            out.append(f"{name} is not a lattice polytope")
        interior = interior_lattice_points(p)
        if interior != [(0,) * p.dim]:
            out.append(f"{name} has interior lattice points {interior}, expected only the origin")
        if not is_reflexive(p):
            out.append(f"{name} is not reflexive")
    return out


def check_classification() -> list[str]:
    polys = compute_all_polytopes()
    c = classification()
    out = []
    expected = sorted(sorted(row["seeds"]) for row in golden.load("table2.json")["classes"])
    if sorted(c.classes) != expected:
        out.append(f"classes {c.classes}, expected {expected}")
    for m in catalog_maps():
        src = gp_polytope(m["source_polytope"]) if "source_polytope" in m else polys[m["source"]]
        if not verify_unimodular_map(src, polys[m["target"]], m["map"]):
            out.append(f"catalog map t{m['source']} -> t{m['target']} does not verify")
    for cls in c.classes:
        for a, b in combinations(cls, 2):
            if search_signed_permutation_map(polys[a], polys[b]) is None:
                # outside the signed-permutation scope; an incidence witness must exist
                if not any({w.source, w.target} <= set(cls) for w in c.witnesses if w.method == "incidence"):
                    out.append(f"no witness relates t{a} and t{b}")
    for w in c.witnesses:
        if not verify_unimodular_map(polys[w.source], polys[w.target], w.map):
            out.append(f"witness map t{w.source} -> t{w.target} does not verify")
    return out


def check_involutions() -> list[str]:
    c = classification()
    graph = _drawn_graph()
    edges = set(map(frozenset, graph.edges))
    out = []
    inv = c.involutions
    for name, perm in inv.items():
        if any(perm[perm[k]] != k for k in perm):
            out.append(f"{name} is not an involution")
        if {frozenset((perm[a], perm[b])) for a, b in graph.edges} != edges:
            out.append(f"{name} is not an automorphism of the exchange graph")
        for k in perm:
            if c.class_of(k) != c.class_of(perm[k]):
                out.append(f"{name} moves t{k} out of its class")
    i, j = inv["iota"], inv["iota_prime"]
    if any(i[j[k]] != j[i[k]] for k in i):
        out.append("iota and iota_prime do not commute")
    if len(c.orbit_structure) != 6:
        out.append(f"{len(c.orbit_structure)} orbits, expected 6")
    merged = {tuple(sorted({c.class_of(k) for k in orbit})) for orbit in c.orbit_structure}
    if len(merged) != 5 or any(len(m) != 1 for m in merged):
        out.append("orbits do not refine the five classes")
    autos = class_preserving_automorphisms(graph, c.classes)
    group = {tuple(sorted(p.items())) for p in (i, j, {k: i[j[k]] for k in i}, {k: k for k in i})}
    if {tuple(sorted(a.items())) for a in autos} != group:
        out.append(f"{len(autos)} class-preserving graph automorphisms, expected exactly the 4 generated by the involutions")
    return out


def check_facet_counts() -> list[str]:
    polys = compute_all_polytopes()
    twelve = sorted(k for k, p in polys.items() if p.n_facets == 12)
    out = []
    if twelve != [0, 8, 12, 13]:
        out.append(f"12-facet polytopes at {twelve}, expected [0, 8, 12, 13]")
    out += [f"t{k} has {p.n_facets} facets" for k, p in polys.items() if p.n_facets < 12]
    return out


def check_reduced_words() -> list[str]:
    out = []
    words = reduced_words(4)
    fig = golden.load("figure1_edges.json")
    if len(words) != 16 or sorted(map(tuple, fig["words"])) != words:
        out.append(f"{len(words)} reduced words for n=4, expected the 16 drawn")
    g = move_graph(4)
    drawn = {(frozenset((tuple(e["a"]), tuple(e["b"]))), e["move"]) for e in fig["edges"]}
    ours = {(frozenset((a, b)), d["move"]) for a, b, d in g.edges(data=True)}
    if ours != drawn:
        out.append(f"move edges differ from the drawing: {len(ours - drawn)} extra, {len(drawn - ours)} missing")
    classes = two_move_classes(4)
    rows = golden.load("table1.json")["rows"]
    if len(classes) != 8 or len(rows) != 8:
        out.append(f"{len(classes)} two-move classes and {len(rows)} table rows, expected 8 each")
    hit = Counter(next(i for i, c in enumerate(classes) if tuple(r["reduced_word"]) in c) for r in rows)
    if sorted(hit) != list(range(len(classes))) or any(v != 1 for v in hit.values()):
        out.append("table rows do not pick one word from each two-move class")
    if sorted(r["seed"] for r in rows) != [0, 7, 8, 9, 10, 11, 12, 13]:
        out.append("table seeds are not the eight seeds coming from reduced words")
    for n in range(2, 6):
        ws = reduced_words(n)
        if set(ws) != move_closure(ws[0]):
            out.append(f"moves do not connect the reduced words for n={n}")
    return out


def check_properties() -> list[str]:
    out = []
    g = sl4_exchange_graph()
    for node in g.nodes:
        for k in node.seed.unfrozen:
            if mutate_epsilon(mutate_epsilon(node.seed, k), k) != node.seed:
                out.append(f"mutation at {k} is not an involution on node {node.label}")
    pipe = sl4_pipeline()
    for a, r in pipe.realizations.items():
        for k in r.seed.unfrozen:
            moved = apply_tropical(r.polytope, tropical_map(r.seed, k))
            back = apply_tropical(moved, tropical_map(mutate_epsilon(r.seed, k), k))
            if back != r.polytope:
                out.append(f"tropical mutation at {k} is not an involution on t{a}")
    polys = dict(compute_all_polytopes())
    polys["SL3"] = base_polytope_sl3()
    for name, p in polys.items():
        if vertices_by_subsets(p.facets) != set(p.vertices):
            out.append(f"{name}: double description and subset enumeration disagree")
        if not f_vector(p).euler_characteristic_holds():
            out.append(f"{name}: Euler relation fails")
    return out


CHECKS: dict[str, tuple[int, str, Callable[[], list[str]]]] = {
    "exchange-graph": (1, "exchange graphs for SL3 and SL4", check_exchange_graph),
    "base-polytope": (2, "base polytope from two independent routes", check_base_polytope),
    "transport": (3, "transported polytopes match the six case matrices", check_transport),
    "formulas": (4, "tropical maps match the displayed formulas", check_formulas),
    "fvectors": (5, "f-vectors of all 14 polytopes", check_fvectors),
    "degrees": (6, "vertex-degree histograms and Case 2/5 non-isomorphism", check_degrees),
    "reflexive": (7, "lattice polytopes, reflexive, unique interior point", check_reflexive),
    "classification": (8, "five unimodular classes with verified witnesses", check_classification),
    "involutions": (9, "the two involutions and their orbits", check_involutions),
    "facet-count": (10, "twelve facets exactly on the Gelfand-Cetlin class", check_facet_counts),
    "reduced-words": (11, "reduced words, moves, and the seed table", check_reduced_words),
    "properties": (12, "involutivity, subset oracle, Euler relation", check_properties),
}


def run_checks(only: list[str] | None = None) -> list[CheckResult]:
    """Run the selected checks; exceptions become failures rather than escaping."""
    names = list(CHECKS) if not only else only
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s) {unknown}; choose from {list(CHECKS)}")
    results = []
    for name in names:
        criterion, description, fn = CHECKS[name]
        start = time.perf_counter()
        try:
            details = fn()
        except golden.GoldenDataError:
            raise
        except Exception as exc:  # a broken input surfaces as a failed check
            details = [f"{type(exc).__name__}: {exc}"]
        results.append(CheckResult(name, criterion, description, details, time.perf_counter() - start))
    return results


def fingerprints() -> dict[int, dict]:
    return {k: fingerprint(p).to_dict() for k, p in compute_all_polytopes().items()}
