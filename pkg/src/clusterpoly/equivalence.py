"""Unimodular equivalence of lattice polytopes and the SL_4 classification.

Equivalences are proved constructively (explicit integer maps, verified on
vertex sets) and inequivalences by invariants.  Searches assume both
polytopes are normalized so that their unique interior lattice point is the
origin; an equivalence must then fix the origin and is linear.
"""

from __future__ import annotations

import itertools
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from . import golden
from .linalg import AffineMap, RatMatrix, integer_rank, mat_det, mat_inverse, mat_mul
from .polytope import (
    Polytope,
    combinatorial_isomorphisms,
    count_lattice_points,
    f_vector,
    interior_lattice_points,
    is_combinatorially_isomorphic,
    polytope_from_vrep,
    translate,
    vertex_degree_histogram,
)

logger = logging.getLogger(__name__)

__all__ = [
    "UnimodularMap",
    "NotUnimodularError",
    "signed_permutation_map",
    "parse_coordinate_change",
    "apply_map_to_polytope",
    "verify_unimodular_map",
    "search_signed_permutation_map",
    "search_incidence_map",
    "normalize",
    "Fingerprint",
    "fingerprint",
    "Classification",
    "classify",
    "catalog_maps",
    "orbits",
    "class_preserving_automorphisms",
    "parse_involutions",
]


class NotUnimodularError(ValueError):
    pass


@dataclass(frozen=True)
class UnimodularMap:
    """x -> A x + b with A in GL_n(Z) and b integral."""

    inner: AffineMap

    def __post_init__(self):
        A = self.inner.linear
        if not A.is_integral() or any(x.denominator != 1 for x in self.inner.translation):
            raise NotUnimodularError("unimodular maps need integer matrix and translation")
        if abs(mat_det(A)) != 1:
            raise NotUnimodularError(f"determinant {mat_det(A)} is not +-1")

    @classmethod
    def linear(cls, matrix) -> "UnimodularMap":
        m = matrix if isinstance(matrix, RatMatrix) else RatMatrix(matrix)
        return cls(AffineMap.linear_only(m))

    @classmethod
    def identity(cls, n: int) -> "UnimodularMap":
        return cls(AffineMap.identity(n))

    @property
    def matrix(self) -> RatMatrix:
        return self.inner.linear

    @property
    def dim(self) -> int:
        return self.inner.dim

    def __call__(self, x):
        return self.inner(x)

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(self.inner.compose(other.inner))

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(self.inner.inverse())

    def to_dict(self) -> dict:
        return {
            "matrix": self.matrix.to_int_rows(),
            "translation": [int(x) for x in self.inner.translation],
        }


def signed_permutation_map(perm: Sequence[int], signs: Sequence[int]) -> UnimodularMap:
    """Coordinate i of the image is signs[i] * g_{perm[i]} (perm is 0-based)."""
    n = len(perm)
    rows = [[signs[i] if j == perm[i] else 0 for j in range(n)] for i in range(n)]
    return UnimodularMap.linear(rows)


_COORD = re.compile(r"^\s*(-?)\s*g(\d+)\s*$")


def parse_coordinate_change(image: Sequence[str]) -> UnimodularMap:
    """Read a printed map like ``("-g2", "-g3", "-g1", ...)``."""
    perm, signs = [], []
    for text in image:
        m = _COORD.match(text)
        if not m:
            raise ValueError(f"cannot read coordinate {text!r}")
        perm.append(int(m.group(2)) - 1)
        signs.append(-1 if m.group(1) else 1)
    if sorted(perm) != list(range(len(image))):
        raise ValueError("coordinate change is not a permutation")
    return signed_permutation_map(perm, signs)


def apply_map_to_polytope(p: Polytope, u: UnimodularMap) -> Polytope:
    if u.dim != p.dim:
        raise ValueError("dimension mismatch")
    return polytope_from_vrep(u(v) for v in p.vertices)


def verify_unimodular_map(p: Polytope, q: Polytope, u: UnimodularMap) -> bool:
    """True iff u maps the vertex set of p exactly onto that of q."""
    if p.dim != q.dim or u.dim != p.dim or p.n_vertices != q.n_vertices:
        return False
    return sorted(u(v) for v in p.vertices) == list(q.vertices)


def search_signed_permutation_map(p: Polytope, q: Polytope) -> UnimodularMap | None:
    """Exhaustive search over the 2^d d! signed permutations (with pruning).

    A signed permutation is orthogonal, so it sends facet normals to facet
    normals by the same matrix.  Candidates are pruned coordinate by
    coordinate by comparing the multisets of normal entries, then checked on
    the full normal set and finally on vertices.
    """
    if p.dim != q.dim or p.n_facets != q.n_facets or p.n_vertices != q.n_vertices:
        return None
    d = p.dim
    pcols = [Counter(h.normal[j] for h in p.facets) for j in range(d)]
    qcols = [Counter(h.normal[i] for h in q.facets) for i in range(d)]
    neg = [Counter({-k: v for k, v in c.items()}) for c in pcols]
    options = [
        [(j, s) for j in range(d) for s in (1, -1) if (pcols[j] if s == 1 else neg[j]) == qcols[i]]
        for i in range(d)
    ]
    qnormals = sorted(h.normal for h in q.facets)

    def backtrack(i: int, used: set, choice: list):
        if i == d:
            perm = [j for j, _ in choice]
            signs = [s for _, s in choice]
            image = sorted(tuple(signs[k] * n[perm[k]] for k in range(d)) for n in (h.normal for h in p.facets))
            if image != qnormals:
                return None
            u = signed_permutation_map(perm, signs)
            return u if verify_unimodular_map(p, q, u) else None
        for j, s in options[i]:
            if j in used:
                continue
            found = backtrack(i + 1, used | {j}, choice + [(j, s)])
            if found is not None:
                return found
        return None

    return backtrack(0, set(), [])


def search_incidence_map(p: Polytope, q: Polytope) -> UnimodularMap | None:
    """Linear unimodular map p -> q induced by some combinatorial isomorphism.

    A linear map A with A(p) = q sends the facet with normal u to the facet
    with normal A^{-T} u.  For each facet bijection of an incidence
    isomorphism, A^{-T} is pinned down by any d facets with independent
    normals; it is accepted if integral, unimodular, and verified.  Complete
    for linear equivalences because every such map induces an isomorphism.
    """
    if p.dim != q.dim:
        return None
    d = p.dim
    basis: list[int] = []
    for j, h in enumerate(p.facets):
        if integer_rank([p.facets[b].normal for b in basis] + [h.normal]) > len(basis):
            basis.append(j)
            if len(basis) == d:
                break
    Ub_inv = mat_inverse(RatMatrix.from_columns([p.facets[j].normal for j in basis]))
    tried = set()
    for _, fmap in combinatorial_isomorphisms(p, q):
        key = tuple(fmap[j] for j in basis)
        if key in tried:
            continue
        tried.add(key)
        C = mat_mul(RatMatrix.from_columns([q.facets[fmap[j]].normal for j in basis]), Ub_inv)
        if not C.is_integral() or abs(mat_det(C)) != 1:
            continue
        if any(C.apply(h.normal) != tuple(q.facets[fmap[j]].normal) for j, h in enumerate(p.facets)):
            continue
        u = UnimodularMap.linear(mat_inverse(C).transpose())
        if verify_unimodular_map(p, q, u):
            return u
    return None


def normalize(p: Polytope) -> tuple[Polytope, tuple[int, ...]]:
    """Translate p so its unique interior lattice point is the origin.

    Returns the translated polytope and the interior point that was removed.
    """
    interior = interior_lattice_points(p)
    if len(interior) != 1:
        raise ValueError(f"expected a unique interior lattice point, found {len(interior)}")
    c = interior[0]
    return translate(p, tuple(-x for x in c)), c


# --------------------------------------------------------------------------
# fingerprints and classification


@dataclass(frozen=True)
class Fingerprint:
    f_vector: tuple[int, ...]
    degree_histogram: tuple[tuple[int, int], ...]
    facet_count: int
    lattice_point_counts: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "f_vector": list(self.f_vector),
            "degree_histogram": {str(k): v for k, v in self.degree_histogram},
            "facet_count": self.facet_count,
            "lattice_point_counts": list(self.lattice_point_counts),
        }


def fingerprint(p: Polytope) -> Fingerprint:
    q, _ = normalize(p)
    return Fingerprint(
        f_vector(q).as_tuple(),
        tuple(sorted(vertex_degree_histogram(q).items())),
        q.n_facets,
        (count_lattice_points(q, 1), count_lattice_points(q, 2)),
    )


@dataclass
class Witness:
    source: int
    target: int
    map: UnimodularMap
    method: str

    def to_dict(self) -> dict:
        return {"from": self.source, "to": self.target, "method": self.method, **self.map.to_dict()}


@dataclass
class Classification:
    classes: list[list[int]]
    fingerprints: dict[int, Fingerprint]
    witnesses: list[Witness] = field(default_factory=list)
    # pairs with equal f-vector but different classes, shown non-isomorphic
    separated: list[tuple[int, int]] = field(default_factory=list)
    involutions: dict[str, dict[int, int]] = field(default_factory=dict)
    orbit_structure: list[list[int]] = field(default_factory=list)

    def class_of(self, label: int) -> int:
        for i, c in enumerate(self.classes):
            if label in c:
                return i
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "classes": self.classes,
            "involutions": {
                name: {str(k): v for k, v in sorted(perm.items())} for name, perm in self.involutions.items()
            },
            "orbits": self.orbit_structure,
            "witness_maps": [w.to_dict() for w in self.witnesses],
            "fingerprints": {str(k): fp.to_dict() for k, fp in sorted(self.fingerprints.items())},
        }


def _find_equivalence(p: Polytope, q: Polytope) -> tuple[UnimodularMap, str] | None:
    u = search_signed_permutation_map(p, q)
    if u is not None:
        return u, "signed-permutation"
    u = search_incidence_map(p, q)
    if u is not None:
        return u, "incidence"
    return None


def classify(polytopes: Mapping[int, Polytope], involutions: Mapping[str, Mapping[int, int]] | None = None) -> Classification:
    """Partition labelled polytopes into unimodular equivalence classes.

    Polytopes are first normalized, grouped by :class:`Fingerprint`, and every
    member of a group is linked to the group's first member by an explicit
    verified map.  Groups sharing an f-vector are shown to be combinatorially
    different.
    """
    normed = {k: normalize(p)[0] for k, p in polytopes.items()}
    fps = {k: fingerprint(p) for k, p in normed.items()}
    groups: dict[Fingerprint, list[int]] = {}
    for k in sorted(normed):
        groups.setdefault(fps[k], []).append(k)

    result = Classification(classes=[], fingerprints=fps)
    for members in groups.values():
        # a fingerprint group may still split; grow classes greedily
        classes: list[list[int]] = []
        for k in members:
            for cls in classes:
                found = _find_equivalence(normed[cls[0]], normed[k])
                if found:
                    result.witnesses.append(Witness(cls[0], k, found[0], found[1]))
                    cls.append(k)
                    break
            else:
                classes.append([k])
        result.classes.extend(classes)
    result.classes.sort(key=lambda c: c[0])

    reps = [c[0] for c in result.classes]
    for a, b in itertools.combinations(reps, 2):
        if fps[a].f_vector == fps[b].f_vector:
            iso, _ = is_combinatorially_isomorphic(normed[a], normed[b])
            if iso and _find_equivalence(normed[a], normed[b]):
                raise AssertionError(f"classes of {a} and {b} are equivalent after all")
            result.separated.append((a, b))

    if involutions:
        result.involutions = {name: dict(perm) for name, perm in involutions.items()}
        result.orbit_structure = orbits(result.involutions.values(), sorted(polytopes))
    return result


def catalog_maps() -> list[dict]:
    """The printed coordinate changes with the polytopes they relate.

    A coordinate change g -> image is a substitution: plugging it into the
    inequalities of the source gives those of the target.  The point map
    from source to target is therefore its inverse, stored under ``map``;
    the substitution itself is kept under ``substitution``.
    """
    out = []
    for entry in golden.load("unimodular_maps.json")["maps"]:
        sub = parse_coordinate_change(entry["image"])
        out.append({**entry, "substitution": sub, "map": sub.inverse()})
    return out


def orbits(perms: Iterable[Mapping[int, int]], labels: Sequence[int]) -> list[list[int]]:
    perms = list(perms)
    g = nx.Graph()
    g.add_nodes_from(labels)
    for perm in perms:
        g.add_edges_from((k, perm[k]) for k in labels)
    return sorted(sorted(c) for c in nx.connected_components(g))


def class_preserving_automorphisms(graph: nx.Graph, classes: Sequence[Sequence[int]]) -> list[dict]:
    """Graph automorphisms sending every node into its own equivalence class."""
    which = {k: i for i, c in enumerate(classes) for k in c}
    out = []
    for auto in GraphMatcher(graph, graph).isomorphisms_iter():
        if all(which[k] == which[v] for k, v in auto.items()):
            out.append(dict(sorted(auto.items())))
    return out


def parse_involutions(data: Mapping[str, Mapping[str, int]]) -> dict[str, dict[int, int]]:
    return {name: {int(k): int(v) for k, v in perm.items()} for name, perm in data.items()}
