"""Flag-variety specific constructions for SL_3 and SL_4.

Reduced-word combinatorics, the string polytope for the word (1,2,1,3,2,1),
the base polytopes, and the pipeline that attaches a polytope to every seed
of the SL_4 exchange graph by tropicalized mutation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import networkx as nx

from . import golden
from .linalg import RatMatrix, mat_inverse
from .polytope import (
    HalfSpace,
    Polytope,
    interior_lattice_points,
    linear_image,
    normal_multiset,
    polytope_from_hrep,
    polytope_from_normal_matrix,
    translate,
)
from .seeds import (
    ExchangeGraph,
    Seed,
    SeedEquivalence,
    all_equivalences,
    build_exchange_graph,
    mutate_epsilon,
    seed_from_quiver,
    seeds_equivalent,
)
from .tropical import ConventionError, apply_tropical, check_sign_convention, tropical_map

logger = logging.getLogger(__name__)

__all__ = [
    "Weight",
    "ReducedWord",
    "reduced_words",
    "word_product",
    "move_graph",
    "two_move_classes",
    "string_inequalities_i0",
    "string_polytope_i0",
    "m_matrix_i0",
    "transport_string_polytope",
    "base_polytope_sl4",
    "base_polytope_sl3",
    "gp_polytope",
    "sl4_start_seed",
    "sl3_start_seed",
    "sl4_exchange_graph",
    "sl3_exchange_graph",
    "align_labels",
    "Realization",
    "SL4Pipeline",
    "sl4_pipeline",
    "compute_all_polytopes",
    "CrossValidationError",
]


class CrossValidationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Weight:
    """Dominant weight as coefficients of the fundamental weights."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coefficients):
            raise ValueError("weights here are dominant: coefficients must be >= 0")

    @classmethod
    def anticanonical(cls, n: int) -> "Weight":
        return cls((2,) * (n - 1))

    def __getitem__(self, i: int) -> int:
        """1-based coefficient lambda_i."""
        return self.coefficients[i - 1]


# --------------------------------------------------------------------------
# reduced words

ReducedWord = tuple  # tuple[int, ...] of letters in 1..n-1


def word_product(word: Sequence[int], n: int) -> tuple[int, ...]:
    """One-line notation of s_{i_1} s_{i_2} ... s_{i_l} in S_n."""
    w = list(range(1, n + 1))
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"letter {i} out of range for S_{n}")
        w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def longest_element(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def reduced_words(n: int) -> list[ReducedWord]:
    """All reduced words of the longest element of S_n, sorted."""
    if not 2 <= n <= 6:
        raise ValueError("reduced words are enumerated for 2 <= n <= 6")

    @lru_cache(maxsize=None)
    def words(w: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
        if all(w[i] < w[i + 1] for i in range(n - 1)):
            return ((),)
        out = []
        for i in range(n - 1):
            if w[i] > w[i + 1]:
                v = list(w)
                v[i], v[i + 1] = v[i + 1], v[i]
                out.extend(p + (i + 1,) for p in words(tuple(v)))
        return tuple(out)

    result = sorted(set(words(longest_element(n))))
    w0 = longest_element(n)
    length = n * (n - 1) // 2
    assert all(len(r) == length and word_product(r, n) == w0 for r in result)
    return result


def _moves(word: ReducedWord):
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if abs(a - b) > 1:
            yield word[:p] + (b, a) + word[p + 2 :], "2-move"
    for p in range(len(word) - 2):
        a, b, c = word[p : p + 3]
        if a == c and abs(a - b) == 1:
            yield word[:p] + (b, a, b) + word[p + 3 :], "3-move"


def move_graph(n: int, words: list[ReducedWord] | None = None) -> nx.Graph:
    """Reduced words joined by 2-moves and 3-moves (edge attribute ``move``)."""
    words = reduced_words(n) if words is None else words
    g = nx.Graph()
    g.add_nodes_from(words)
    for w in words:
        for v, kind in _moves(w):
            g.add_edge(w, v, move=kind)
    if not nx.is_connected(g):
        raise AssertionError("move graph is disconnected, contradicting Tits' theorem")
    return g


def move_closure(word: ReducedWord) -> set[ReducedWord]:
    """Every word reachable from ``word`` by moves; independent of :func:`reduced_words`."""
    seen = {tuple(word)}
    stack = [tuple(word)]
    while stack:
        w = stack.pop()
        for v, _ in _moves(w):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def two_move_classes(n: int) -> list[list[ReducedWord]]:
    g = move_graph(n)
    h = nx.Graph()
    h.add_nodes_from(g.nodes)
    h.add_edges_from((a, b) for a, b, d in g.edges(data=True) if d["move"] == "2-move")
    return sorted(sorted(c) for c in nx.connected_components(h))


# --------------------------------------------------------------------------
# string polytope and base polytopes


def string_inequalities_i0(lam: Weight | Sequence[int] = (2, 2, 2)) -> list[HalfSpace]:
    """Inequalities of the string polytope for (1,2,1,3,2,1) in a-coordinates."""
    lam = lam if isinstance(lam, Weight) else Weight(tuple(lam))
    if len(lam.coefficients) != 3:
        raise ValueError("the word (1,2,1,3,2,1) needs a weight for SL_4")
    l1, l2, l3 = lam.coefficients

    def hs(coeffs: dict[int, int], const: int) -> HalfSpace:
        # sum coeffs[i] a_i + const >= 0
        return HalfSpace(tuple(coeffs.get(i, 0) for i in range(1, 7)), Fraction(-const))

    return [
        hs({1: 1}, 0),  # 0 <= a1
        hs({1: -1, 2: 1, 3: -2, 5: 1, 6: -2}, l1),  # a1 <= a2 - 2a3 + a5 - 2a6 + l1
        hs({2: 1, 3: -1}, 0),  # a3 <= a2
        hs({2: -1, 3: 1, 4: 1, 5: -2, 6: 1}, l2),  # a2 <= a3 + a4 - 2a5 + a6 + l2
        hs({3: 1}, 0),  # 0 <= a3
        hs({3: -1, 5: 1, 6: -2}, l1),  # a3 <= a5 - 2a6 + l1
        hs({4: 1, 5: -1}, 0),  # a5 <= a4
        hs({4: -1, 5: 1}, l3),  # a4 <= a5 + l3
        hs({5: 1, 6: -1}, 0),  # a6 <= a5
        hs({5: -1, 6: 1}, l2),  # a5 <= a6 + l2
        hs({6: 1}, 0),  # 0 <= a6
        hs({6: -1}, l1),  # a6 <= l1
    ]


def string_polytope_i0(lam=(2, 2, 2)) -> Polytope:
    return polytope_from_hrep(string_inequalities_i0(lam))


def m_matrix_i0() -> RatMatrix:
    return RatMatrix(golden.matrix("m_i0.json"))


def transport_string_polytope(lam=(2, 2, 2)) -> Polytope:
    """String polytope moved by M_{i0} and centred at its interior lattice point.

    A string-cone normal n becomes the normal M n, i.e. a point a goes to
    g = M^{-T} a.  This is the convention that reproduces the displayed
    product of M_{i0} with the string normals.
    """
    string = string_polytope_i0(lam)
    M = m_matrix_i0()
    moved = linear_image(string, mat_inverse(M).transpose())
    interior = interior_lattice_points(moved)
    if len(interior) != 1:
        raise CrossValidationError(
            f"transported string polytope has {len(interior)} interior lattice points, expected exactly one"
        )
    return translate(moved, tuple(-x for x in interior[0]))


@lru_cache(maxsize=None)
def _base_sl4(golden_key: str) -> Polytope:
    direct = polytope_from_normal_matrix(golden.matrix("eq2_2.json"))
    other = transport_string_polytope()
    if direct != other:
        missing = normal_multiset(other) - normal_multiset(direct)
        extra = normal_multiset(direct) - normal_multiset(other)
        raise CrossValidationError(
            f"base polytope disagrees with the transported string polytope; "
            f"normals only in the golden matrix: {sorted(extra)}, only in the transport: {sorted(missing)}"
        )
    return direct


def base_polytope_sl4() -> Polytope:
    """Polytope at seed t0, cross-validated against the string-polytope route."""
    return _base_sl4(str(golden.golden_dir()))


def base_polytope_sl3() -> Polytope:
    return polytope_from_normal_matrix(golden.matrix("sl3.json"))


def gp_polytope(seed_label) -> Polytope:
    label = int(str(seed_label).removeprefix("gp_").lstrip("t"))
    if label not in golden.GP_FILES:
        raise KeyError(f"no string-polytope matrix for seed {seed_label}; known: t7, t9, t11")
    return polytope_from_normal_matrix(golden.gp_matrix(label))


# --------------------------------------------------------------------------
# seeds and exchange graphs


def _quiver_data() -> dict:
    return golden.load("quivers.json")


def sl4_start_seed() -> Seed:
    q = _quiver_data()
    return seed_from_quiver(q["n"], q["unfrozen"], q["quivers"]["0"])


def sl3_start_seed() -> Seed:
    d = golden.load("sl3.json")
    return seed_from_quiver(d["n"], d["unfrozen"], d["quivers"]["i0"]["arrows"])


def landscape_seeds() -> dict[str, Seed]:
    """Every drawn SL_4 quiver as a seed, keyed as in quivers.json."""
    q = _quiver_data()
    return {k: seed_from_quiver(q["n"], q["unfrozen"], arrows) for k, arrows in q["quivers"].items()}


def align_labels(graph: ExchangeGraph) -> list[str]:
    """Name BFS nodes after the drawn seeds; returns descriptions of unmatched nodes."""
    ref = {k: s for k, s in landscape_seeds().items() if not k.endswith("_drawn")}
    unmatched = []
    for node in graph.nodes:
        names = {k.rstrip("ab") for k, s in ref.items() if seeds_equivalent(s, node.seed)}
        if len(names) == 1:
            node.label = names.pop()
        else:
            unmatched.append(f"node {node.index} (path {node.path}) matches {sorted(names) or 'nothing'}")
    return unmatched


def sl4_exchange_graph(max_depth: int = 20) -> ExchangeGraph:
    g = build_exchange_graph(sl4_start_seed(), max_depth=max_depth)
    problems = align_labels(g)
    if problems:
        raise CrossValidationError("; ".join(problems))
    return g


def sl3_exchange_graph(max_depth: int = 20) -> ExchangeGraph:
    g = build_exchange_graph(sl3_start_seed(), max_depth=max_depth)
    for node in g.nodes:
        node.label = f"i{node.index}"
    return g


# --------------------------------------------------------------------------
# the transport pipeline


@dataclass
class Realization:
    """A seed as reached along a specific mutation path, with its polytope."""

    label: int
    seed: Seed
    polytope: Polytope
    parent: int | None = None
    direction: int | None = None


@dataclass
class SL4Pipeline:
    graph: ExchangeGraph
    realizations: dict[int, Realization]
    # non-tree edges (u, v, k, sigma) where mu_k of u's realization matches v's via sigma
    cycle_checks: list[tuple[int, int, int, SeedEquivalence]] = field(default_factory=list)

    @property
    def polytopes(self) -> dict[int, Polytope]:
        return {k: r.polytope for k, r in sorted(self.realizations.items())}


def _tree_order(tree: dict[int, tuple[int, int]]) -> list[int]:
    order, done = [], {0}
    while len(done) < len(tree) + 1:
        for child, (parent, _) in sorted(tree.items()):
            if child not in done and parent in done:
                order.append(child)
                done.add(child)
    return order


def _matching_direction(src: Seed, dst: Seed) -> tuple[int, list[SeedEquivalence]] | None:
    for k in src.unfrozen:
        sigmas = all_equivalences(mutate_epsilon(src, k), dst)
        if sigmas:
            return k, sigmas
    return None


@lru_cache(maxsize=None)
def _pipeline(golden_key: str) -> SL4Pipeline:
    graph = sl4_exchange_graph()
    tree = {int(c): (p, k) for c, (p, k) in _quiver_data()["transport_tree"].items()}
    start = sl4_start_seed()
    real = {0: Realization(0, start, base_polytope_sl4())}
    for child in _tree_order(tree):
        parent, k = tree[child]
        src = real[parent]
        poly = apply_tropical(src.polytope, tropical_map(src.seed, k))
        real[child] = Realization(child, mutate_epsilon(src.seed, k), poly, parent, k)

    problems = check_sign_convention({lab: r.seed for lab, r in real.items()}, golden.load("mu_formulas.json")["formulas"])
    if problems:
        raise ConventionError("tropical map disagrees with the displayed formulas: " + "; ".join(problems))

    for lab, r in real.items():
        node = graph.node_by_label(lab)
        if seeds_equivalent(node.seed, r.seed) is None:
            raise CrossValidationError(f"transport tree reaches seed {lab} with a foreign exchange matrix")

    pipeline = SL4Pipeline(graph, real)
    tree_edges = {frozenset((c, p)) for c, (p, _) in tree.items()}
    for e in sorted(graph.undirected_edges(), key=sorted):
        a, b = sorted(int(graph.nodes[i].label) for i in e)
        if frozenset((a, b)) in tree_edges:
            continue
        found = _matching_direction(real[a].seed, real[b].seed)
        if found is None:
            raise CrossValidationError(f"no mutation carries seed {a} to seed {b}")
        k, sigmas = found
        moved = apply_tropical(real[a].polytope, tropical_map(real[a].seed, k))
        target = sorted(real[b].polytope.vertices)
        good = [s for s in sigmas if sorted(s.permute_point(v) for v in moved.vertices) == target]
        if not good:
            raise CrossValidationError(f"transport along {a} -{k}- {b} disagrees with the tree transport")
        pipeline.cycle_checks.append((a, b, k, good[0]))
    return pipeline


def sl4_pipeline() -> SL4Pipeline:
    return _pipeline(str(golden.golden_dir()))


def compute_all_polytopes() -> dict[int, Polytope]:
    """Polytope of every SL_4 seed, keyed by the seed numbers 0..13."""
    return sl4_pipeline().polytopes
