"""Exchange matrices, mutation and exchange graphs.

A :class:`Seed` only carries the exchange matrix ``epsilon`` indexed by
``J_uf x J``; cluster variables are not modelled.  Indices are 1-based as in
the usual quiver pictures, and ``epsilon[i][j] = #(j -> i) - #(i -> j)``, so
the quiver's adjacency matrix is ``-epsilon``.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterable, Sequence

import networkx as nx

logger = logging.getLogger(__name__)

__all__ = [
    "Seed",
    "SeedEquivalence",
    "ExchangeGraph",
    "ExchangeGraphNode",
    "MutationError",
    "mutate_epsilon",
    "seed_from_quiver",
    "seed_to_quiver",
    "seeds_equivalent",
    "canonical_epsilon",
    "build_exchange_graph",
]


class MutationError(ValueError):
    pass


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Seed:
    n: int
    unfrozen: tuple[int, ...]
    epsilon: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        uf = tuple(sorted(self.unfrozen))
        object.__setattr__(self, "unfrozen", uf)
        eps = tuple(tuple(int(x) for x in row) for row in self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if len(eps) != len(uf) or any(len(r) != self.n for r in eps):
            raise ValueError("epsilon must have one row per unfrozen index and n columns")
        if not set(uf) <= set(range(1, self.n + 1)):
            raise ValueError("unfrozen indices must lie in 1..n")
        if not self.is_skew_symmetrizable():
            raise ValueError("unfrozen block of epsilon is not skew-symmetrizable")

    @property
    def frozen(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.n + 1) if j not in self.unfrozen)

    def _row(self, i: int) -> int:
        return self.unfrozen.index(i)

    def eps(self, i: int, j: int) -> int:
        """Entry epsilon_{i,j} for i unfrozen, j in 1..n."""
        return self.epsilon[self._row(i)][j - 1]

    def unfrozen_block(self) -> list[list[int]]:
        return [[self.eps(i, j) for j in self.unfrozen] for i in self.unfrozen]

    def is_skew_symmetric(self) -> bool:
        return all(self.eps(i, j) == -self.eps(j, i) for i in self.unfrozen for j in self.unfrozen)

    def is_skew_symmetrizable(self) -> bool:
        if self.is_skew_symmetric():
            return True
        # sign pattern and d_i eps_ij = -d_j eps_ji with positive d; brute force d in 1..4
        uf = self.unfrozen
        for ds in _small_positive_tuples(len(uf), 4):
            d = dict(zip(uf, ds))
            if all(d[i] * self.eps(i, j) == -d[j] * self.eps(j, i) for i in uf for j in uf):
                return True
        return False

    def to_dict(self) -> dict:
        return {"n": self.n, "unfrozen": list(self.unfrozen), "epsilon": [list(r) for r in self.epsilon]}

    @classmethod
    def from_dict(cls, data: dict) -> "Seed":
        return cls(int(data["n"]), tuple(data["unfrozen"]), tuple(tuple(r) for r in data["epsilon"]))


def _small_positive_tuples(k: int, bound: int):
    if k == 0:
        yield ()
        return
    for rest in _small_positive_tuples(k - 1, bound):
        for a in range(1, bound + 1):
            yield rest + (a,)


def mutate_epsilon(s: Seed, k: int) -> Seed:
    """Matrix mutation in direction ``k``.

    eps'_{ij} = -eps_{ij} if k in (i, j), else
    eps_{ij} + sgn(eps_{ik}) [eps_{ik} eps_{kj}]_+.
    """
    if k not in s.unfrozen:
        raise MutationError(f"cannot mutate in frozen or unknown direction {k}")
    rows = []
    for i in s.unfrozen:
        row = []
        for j in range(1, s.n + 1):
            e = s.eps(i, j)
            if i == k or j == k:
                row.append(-e)
            else:
                eik = s.eps(i, k)
                row.append(e + _sgn(eik) * max(eik * s.eps(k, j), 0))
        rows.append(tuple(row))
    return Seed(s.n, s.unfrozen, tuple(rows))


def seed_from_quiver(n: int, unfrozen: Iterable[int], arrows: Iterable[Sequence[int]]) -> Seed:
    """Exchange matrix of a quiver given as a list of arrows ``(i, j)`` meaning i -> j."""
    uf = tuple(sorted(unfrozen))
    eps = {(i, j): 0 for i in uf for j in range(1, n + 1)}
    for a, b in arrows:
        if a in uf:
            eps[(a, b)] -= 1
        if b in uf:
            eps[(b, a)] += 1
    return Seed(n, uf, tuple(tuple(eps[(i, j)] for j in range(1, n + 1)) for i in uf))


def seed_to_quiver(s: Seed) -> nx.MultiDiGraph:
    """Quiver of a seed with skew-symmetric unfrozen block.

    Frozen-frozen arrows are not recorded by a rectangular exchange matrix and
    never appear.
    """
    if not s.is_skew_symmetric():
        raise ValueError("only skew-symmetric exchange matrices define quivers")
    q = nx.MultiDiGraph()
    q.add_nodes_from(range(1, s.n + 1))
    for i in s.unfrozen:
        for j in range(1, s.n + 1):
            e = s.eps(i, j)
            if j in s.unfrozen and j < i:
                continue  # already seen from row j
            for _ in range(abs(e)):
                if e < 0:
                    q.add_edge(i, j)
                else:
                    q.add_edge(j, i)
    return q


def quiver_arrows(s: Seed) -> list[tuple[int, int]]:
    return sorted(seed_to_quiver(s).edges())


@dataclass(frozen=True)
class SeedEquivalence:
    """Permutation of 1..n fixing frozen indices, with eps'_{ij} = eps_{sigma(i), sigma(j)}."""

    sigma: tuple[int, ...]  # sigma[j-1] = sigma(j)

    def __call__(self, j: int) -> int:
        return self.sigma[j - 1]

    def inverse(self) -> "SeedEquivalence":
        inv = [0] * len(self.sigma)
        for j, sj in enumerate(self.sigma, start=1):
            inv[sj - 1] = j
        return SeedEquivalence(tuple(inv))

    def compose(self, other: "SeedEquivalence") -> "SeedEquivalence":
        """self after other."""
        return SeedEquivalence(tuple(self(other(j)) for j in range(1, len(self.sigma) + 1)))

    def is_identity(self) -> bool:
        return all(sj == j for j, sj in enumerate(self.sigma, start=1))

    def permute_point(self, g: Sequence) -> tuple:
        """Coordinates g'_j = g_{sigma(j)}."""
        return tuple(g[self(j) - 1] for j in range(1, len(self.sigma) + 1))


def _relabel(s: Seed, sigma: dict[int, int]) -> tuple[tuple[int, ...], ...]:
    """epsilon' with eps'_{ij} = eps_{sigma(i), sigma(j)}."""
    return tuple(
        tuple(s.eps(sigma[i], sigma[j]) for j in range(1, s.n + 1)) for i in s.unfrozen
    )


def _frozen_fixing_perms(s: Seed):
    for p in permutations(s.unfrozen):
        sigma = {j: j for j in range(1, s.n + 1)}
        sigma.update(zip(s.unfrozen, p))
        yield sigma


def seeds_equivalent(s: Seed, t: Seed) -> SeedEquivalence | None:
    """Find sigma with t.eps(i, j) == s.eps(sigma(i), sigma(j)); exhaustive over J_uf!."""
    return next(iter(all_equivalences(s, t)), None)


def all_equivalences(s: Seed, t: Seed) -> list[SeedEquivalence]:
    if s.n != t.n or s.unfrozen != t.unfrozen:
        return []
    out = []
    for sigma in _frozen_fixing_perms(s):
        if _relabel(s, sigma) == t.epsilon:
            out.append(SeedEquivalence(tuple(sigma[j] for j in range(1, s.n + 1))))
    return out


def canonical_epsilon(s: Seed) -> tuple[tuple[int, ...], ...]:
    """Lexicographically smallest epsilon over all frozen-fixing relabelings."""
    return min(_relabel(s, sigma) for sigma in _frozen_fixing_perms(s))


# --------------------------------------------------------------------------
# exchange graph


@dataclass
class ExchangeGraphNode:
    index: int
    seed: Seed  # the realization reached first by BFS
    canonical: tuple
    depth: int
    path: tuple[int, ...]  # mutation directions from the start seed
    label: str | None = None
    polytope: object = None


@dataclass
class ExchangeGraph:
    nodes: list[ExchangeGraphNode] = field(default_factory=list)
    # (a, b, k): mutating node a's realization at k gives a seed equivalent to node b
    edges: list[tuple[int, int, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.nodes)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.undirected_edges())

    def undirected_edges(self) -> set[frozenset]:
        return {frozenset((a, b)) for a, b, _ in self.edges if a != b}

    def to_networkx(self, labels: bool = False) -> nx.Graph:
        g = nx.Graph()
        name = (lambda i: self.nodes[i].label) if labels else (lambda i: i)
        g.add_nodes_from(name(n.index) for n in self.nodes)
        for a, b, _ in self.edges:
            if a != b:
                g.add_edge(name(a), name(b))
        return g

    def is_regular(self, degree: int) -> bool:
        return all(d == degree for _, d in self.to_networkx().degree())

    def node_by_label(self, label) -> ExchangeGraphNode:
        for n in self.nodes:
            if n.label == str(label):
                return n
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "nodes": [
                {
                    "index": n.index,
                    "label": n.label,
                    "depth": n.depth,
                    "path": list(n.path),
                    "epsilon": [list(r) for r in n.seed.epsilon],
                    "canonical_epsilon": [list(r) for r in n.canonical],
                }
                for n in self.nodes
            ],
            "edges": [{"source": a, "target": b, "direction": k} for a, b, k in self.edges],
        }


class ExchangeGraphTooDeep(RuntimeError):
    pass


def build_exchange_graph(
    start: Seed,
    max_depth: int = 50,
    attach: Callable | None = None,
    start_polytope=None,
) -> ExchangeGraph:
    """Breadth-first search over mutations modulo seed equivalence.

    ``attach(polytope, seed, k)`` transports the polytope of ``seed`` along
    the mutation in direction ``k``.  When given, a newly reached seed is
    identified with an existing node only if some equivalence sigma also
    carries the transported polytope onto the stored one (coordinates
    permuted by sigma).
    """
    graph = ExchangeGraph()
    index: dict[tuple, list[int]] = {}

    def find(seed: Seed, poly) -> int | None:
        for idx in index.get(canonical_epsilon(seed), []):
            node = graph.nodes[idx]
            sigmas = all_equivalences(seed, node.seed)
            if not sigmas:
                continue
            if attach is None:
                return idx
            for sigma in sigmas:
                if _permuted_equal(poly, sigma, node.polytope):
                    return idx
        return None

    root = ExchangeGraphNode(0, start, canonical_epsilon(start), 0, (), polytope=start_polytope)
    graph.nodes.append(root)
    index.setdefault(root.canonical, []).append(0)
    queue = deque([0])
    seen_edges = set()
    while queue:
        a = queue.popleft()
        node = graph.nodes[a]
        for k in start.unfrozen:
            mutated = mutate_epsilon(node.seed, k)
            poly = attach(node.polytope, node.seed, k) if attach else None
            b = find(mutated, poly)
            if b is None:
                if node.depth + 1 > max_depth:
                    raise ExchangeGraphTooDeep(f"exchange graph exceeds depth {max_depth}")
                b = len(graph.nodes)
                graph.nodes.append(
                    ExchangeGraphNode(b, mutated, canonical_epsilon(mutated), node.depth + 1, node.path + (k,), polytope=poly)
                )
                index.setdefault(graph.nodes[b].canonical, []).append(b)
                queue.append(b)
            key = (min(a, b), max(a, b))
            if key not in seen_edges:
                seen_edges.add(key)
                graph.edges.append((a, b, k))
    logger.debug("exchange graph: %d nodes, %d edges", graph.node_count, graph.edge_count)
    return graph


def _permuted_equal(poly, sigma: SeedEquivalence, target) -> bool:
    """Is {sigma.permute_point(g)} over poly's vertices equal to target's vertex set?

    Seeds related by sigma have valuations related by the same relabeling of
    coordinates.  The stored node realization ``target`` satisfies
    eps_target(i, j) = eps_poly(sigma(i), sigma(j)), hence g_target_j = g_{sigma(j)}.
    """
    return sorted(sigma.permute_point(v) for v in poly.vertices) == list(target.vertices)
