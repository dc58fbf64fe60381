"""Bounded rational polytopes with synchronized H- and V-representations.

Vertex and facet enumeration both go through one exact double-description
routine operating on the homogenized cone with Python integers.  Facet
normals are always stored as primitive integer vectors, so comparing a
polytope against an integer normal matrix is exact and order-insensitive.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil, floor, gcd
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .linalg import (
    RatMatrix,
    SingularMatrixError,
    as_rational,
    format_rational,
    integer_rank,
    mat_inverse,
    parse_rational,
    primitive_integer_vector,
    vector,
)

__all__ = [
    "PolytopeError",
    "HalfSpace",
    "FVector",
    "Polytope",
    "extreme_rays",
    "polytope_from_hrep",
    "polytope_from_vrep",
    "polytope_from_normal_matrix",
    "vertices_by_subsets",
    "f_vector",
    "vertex_degree_histogram",
    "is_combinatorially_isomorphic",
    "is_lattice_polytope",
    "is_reflexive",
    "interior_lattice_points",
    "lattice_points",
    "count_lattice_points",
    "translate",
    "linear_image",
    "normal_multiset",
    "cube",
    "simplex",
]


class PolytopeError(ValueError):
    """Raised for inputs that do not describe a full-dimensional polytope.

    ``kind`` is one of ``"unbounded"``, ``"empty"`` or ``"degenerate"``.
    """

    def __init__(self, kind: str, message: str = ""):
        super().__init__(f"{kind}: {message}" if message else kind)
        self.kind = kind


# --------------------------------------------------------------------------
# integer helpers


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def _scale_to_int(v: Sequence[Fraction]) -> list[int]:
    lcm = 1
    for x in v:
        d = x.denominator
        lcm = lcm * d // gcd(lcm, d)
    return [int(x * lcm) for x in v]


def _idot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _nullspace(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Integer basis of the right kernel of an integer matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][free]
        basis.append(_primitive(_scale_to_int(v)))
    return basis


def homogenize(x: Sequence) -> tuple[int, ...]:
    """(x*q, q) for the least positive integer q making x*q integral."""
    x = [as_rational(a) for a in x]
    q = 1
    for a in x:
        q = q * a.denominator // gcd(q, a.denominator)
    return tuple(int(a * q) for a in x) + (q,)


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of the pointed cone ``{y : A y >= 0}``.

    ``rows`` is an integer matrix of full column rank.  Returns a list of
    ``(ray, tight_mask)`` where ``ray`` is a primitive integer vector and bit
    ``i`` of ``tight_mask`` is set iff ``rows[i] . ray == 0``.

    Incremental double description with the combinatorial adjacency test.
    """
    A = [tuple(int(x) for x in r) for r in rows]
    if not A:
        raise ValueError("empty constraint system")
    D = len(A[0])

    basis_idx: list[int] = []
    for i, r in enumerate(A):
        if integer_rank([A[j] for j in basis_idx] + [r]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == D:
                break
    if len(basis_idx) < D:
        raise ValueError("constraint matrix does not have full column rank")

    inv = mat_inverse(RatMatrix([A[i] for i in basis_idx]))
    rays = [_primitive(_scale_to_int(col)) for col in inv.columns]
    processed = list(basis_idx)
    masks = []
    for ray in rays:
        m = 0
        for i in basis_idx:
            if _idot(A[i], ray) == 0:
                m |= 1 << i
        masks.append(m)

    for i in range(len(A)):
        if i in basis_idx:
            continue
        a = A[i]
        vals = [_idot(a, r) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zero = [j for j, v in enumerate(vals) if v == 0]
        new_rays = [rays[j] for j in pos] + [rays[j] for j in zero]
        new_masks = [masks[j] for j in pos] + [masks[j] | (1 << i) for j in zero]
        if neg:
            old_masks = masks
            for p in pos:
                for q in neg:
                    common = old_masks[p] & old_masks[q]
                    if common.bit_count() < D - 2:
                        continue
                    if any(
                        (common & old_masks[o]) == common
                        for o in range(len(rays))
                        if o != p and o != q
                    ):
                        continue
                    vp, vq = vals[p], vals[q]
                    combo = [vp * y - vq * x for x, y in zip(rays[p], rays[q])]
                    new_rays.append(_primitive(combo))
                    new_masks.append(common | (1 << i))
        rays, masks = new_rays, new_masks
        processed.append(i)
    return list(zip(rays, masks))


# --------------------------------------------------------------------------
# data types


@dataclass(frozen=True, order=True)
class HalfSpace:
    """The closed halfspace ``{x : <x, normal> >= offset}``.

    The normal is stored as a primitive integer vector and the offset is
    rescaled along with it, so equal halfspaces compare equal.
    """

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        raw = vector(self.normal)
        if not any(raw):
            raise ValueError("halfspace normal must be nonzero")
        prim, scale = primitive_integer_vector(raw)
        object.__setattr__(self, "normal", prim)
        object.__setattr__(self, "offset", as_rational(self.offset) * scale)

    @property
    def dim(self) -> int:
        return len(self.normal)

    @cached_property
    def row(self) -> tuple[int, ...]:
        """Integer row r with r . (x*q, q) >= 0 iff x lies in the halfspace (q > 0)."""
        c = self.offset
        return tuple(a * c.denominator for a in self.normal) + (-c.numerator,)

    def value(self, x: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.normal, x)), start=Fraction(0))

    def slack(self, homog: Sequence[int]) -> int:
        """Sign-correct slack for a homogenized point from :func:`homogenize`."""
        return _idot(self.row, homog)

    def contains(self, x: Sequence) -> bool:
        return self.slack(homogenize(x)) >= 0

    def is_tight(self, x: Sequence) -> bool:
        return self.slack(homogenize(x)) == 0


@dataclass(frozen=True)
class FVector:
    """Face counts by dimension -1, 0, ..., d (empty face through the polytope)."""

    counts: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.counts) - 2

    def __getitem__(self, k: int) -> int:
        return self.counts[k + 1]

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def euler_characteristic_holds(self) -> bool:
        d = self.dim
        return sum((-1) ** k * self[k] for k in range(d)) == 1 - (-1) ** d

    def as_tuple(self) -> tuple[int, ...]:
        return self.counts


@dataclass(frozen=True, eq=False)
class Polytope:
    """A full-dimensional bounded polytope.

    Construct with :func:`polytope_from_hrep` or :func:`polytope_from_vrep`;
    the direct constructor trusts its inputs apart from :meth:`validate`.
    Facets and vertices are stored in lexicographic order.
    """

    dim: int
    facets: tuple[HalfSpace, ...]
    vertices: tuple[tuple[Fraction, ...], ...]
    _homog: tuple = field(default=(), repr=False)

    def __post_init__(self):
        facets = tuple(sorted(set(self.facets)))
        verts = tuple(sorted(set(tuple(as_rational(x) for x in v) for v in self.vertices)))
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "_homog", tuple(homogenize(v) for v in verts))

    # -- representations ---------------------------------------------------

    @property
    def hrep(self) -> tuple[HalfSpace, ...]:
        return self.facets

    @property
    def vrep(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.vertices

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        """Bit ``v`` of entry ``F`` is set iff vertex ``v`` lies on facet ``F``."""
        out = []
        for h in self.facets:
            m = 0
            for i, y in enumerate(self._homog):
                if h.slack(y) == 0:
                    m |= 1 << i
            out.append(m)
        return tuple(out)

    @cached_property
    def incidence(self) -> tuple[tuple[bool, ...], ...]:
        """vertex x facet incidence matrix."""
        masks = self.facet_masks
        return tuple(
            tuple(bool(m >> v & 1) for m in masks) for v in range(len(self.vertices))
        )

    @cached_property
    def faces(self) -> dict[int, list[int]]:
        """All faces as vertex bitmasks, keyed by dimension (-1 .. dim)."""
        full = (1 << len(self.vertices)) - 1
        seen = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for face in frontier:
                for fm in self.facet_masks:
                    g = face & fm
                    if g != face and g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        seen.add(0)
        by_dim: dict[int, list[int]] = {k: [] for k in range(-1, self.dim + 1)}
        for face in seen:
            by_dim[self._face_dim(face)].append(face)
        for k in by_dim:
            by_dim[k].sort()
        return by_dim

    def _face_dim(self, mask: int) -> int:
        if mask == 0:
            return -1
        rows = [self._homog[i] for i in range(len(self.vertices)) if mask >> i & 1]
        return integer_rank(rows) - 1

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        out = []
        for m in self.faces[1]:
            a = (m & -m).bit_length() - 1
            b = m.bit_length() - 1
            out.append((a, b))
        return out

    def normal_matrix(self) -> list[list[int]]:
        """Facet normals as columns (rows = coordinates), the printed layout."""
        return [list(r) for r in zip(*(h.normal for h in self.facets))]

    def offsets(self) -> tuple[Fraction, ...]:
        return tuple(h.offset for h in self.facets)

    def contains(self, x: Sequence) -> bool:
        y = homogenize(x)
        return all(h.slack(y) >= 0 for h in self.facets)

    def same_set(self, other: "Polytope") -> bool:
        return self.dim == other.dim and self.vertices == other.vertices

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.same_set(other) and self.facets == other.facets

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={self.n_vertices}, facets={self.n_facets})"

    def validate(self) -> None:
        """Cross-check the two representations; raise AssertionError on mismatch."""
        d = self.dim
        for v, y in zip(self.vertices, self._homog):
            assert len(v) == d
            assert all(h.slack(y) >= 0 for h in self.facets), f"vertex {v} violates a facet"
        for h, m in zip(self.facets, self.facet_masks):
            rows = [self._homog[i] for i in range(len(self.vertices)) if m >> i & 1]
            assert integer_rank(rows) == d, f"halfspace {h} is not facet-defining"
        for i in range(len(self.vertices)):
            normals = [h.normal for h, m in zip(self.facets, self.facet_masks) if m >> i & 1]
            assert integer_rank(normals) == d, f"point {self.vertices[i]} is not a vertex"

    # -- JSON -----------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "hrep": {
                "normals": [list(h.normal) for h in self.facets],
                "offsets": [format_rational(h.offset) for h in self.facets],
            },
            "vrep": [[format_rational(x) for x in v] for v in self.vertices],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Polytope":
        facets = [
            HalfSpace(tuple(n), parse_rational(str(c)))
            for n, c in zip(data["hrep"]["normals"], data["hrep"]["offsets"])
        ]
        verts = [tuple(parse_rational(str(x)) for x in v) for v in data["vrep"]]
        p = cls(int(data["dim"]), tuple(facets), tuple(verts))
        p.validate()
        return p


# --------------------------------------------------------------------------
# constructors


def _enumerate_vertices(halfspaces: Sequence[HalfSpace], d: int) -> list[tuple[int, ...]]:
    """Homogeneous integer vertices (x*t, t) with t > 0 of an H-polyhedron."""
    rows = [list(h.row) for h in halfspaces]
    rows.append([0] * d + [1])
    lineality = _nullspace(rows, d + 1)
    if lineality:
        # Restrict to the orthogonal complement of the lineality space.
        for l in lineality:
            rows.append(list(l))
            rows.append([-a for a in l])
    rays = [r for r, _ in extreme_rays(rows)]
    finite = [r for r in rays if r[-1] > 0]
    if not finite:
        raise PolytopeError("empty", "the inequality system is infeasible")
    if lineality or any(r[-1] == 0 for r in rays):
        raise PolytopeError("unbounded", "the inequality system has a recession direction")
    return finite


def polytope_from_hrep(halfspaces: Iterable[HalfSpace]) -> Polytope:
    """Vertex-enumerate an inequality system and drop redundant inequalities."""
    hs = [h if isinstance(h, HalfSpace) else HalfSpace(*h) for h in halfspaces]
    if not hs:
        raise PolytopeError("unbounded", "no inequalities")
    d = hs[0].dim
    if any(h.dim != d for h in hs):
        raise ValueError("halfspaces of mixed dimension")
    homog = _enumerate_vertices(hs, d)
    if integer_rank(homog) < d + 1:
        raise PolytopeError("degenerate", "the polytope is not full-dimensional")
    verts = [tuple(Fraction(x, r[-1]) for x in r[:-1]) for r in homog]
    facets = []
    for h in set(hs):
        tight = [r for r in homog if h.slack(r) == 0]
        if len(tight) >= d and integer_rank(tight) == d:
            facets.append(h)
    p = Polytope(d, tuple(facets), tuple(verts))
    p.validate()
    return p


def polytope_from_vrep(points: Iterable[Sequence]) -> Polytope:
    """Facet-enumerate the convex hull of a finite point set."""
    pts = sorted(set(vector(p) for p in points))
    if not pts:
        raise PolytopeError("empty", "no points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points of mixed dimension")
    rows = [_scale_to_int(list(p) + [Fraction(-1)]) for p in pts]
    if integer_rank(rows) < d + 1:
        raise PolytopeError("degenerate", "the points span a lower-dimensional hull")
    facets = []
    for ray, _ in extreme_rays(rows):
        normal, c = ray[:-1], ray[-1]
        if not any(normal):
            continue
        facets.append(HalfSpace(normal, Fraction(c)))
    verts = []
    for p in pts:
        y = homogenize(p)
        normals = [h.normal for h in facets if h.slack(y) == 0]
        if len(normals) >= d and integer_rank(normals) == d:
            verts.append(p)
    poly = Polytope(d, tuple(facets), tuple(verts))
    poly.validate()
    return poly


def polytope_from_normal_matrix(matrix: Sequence[Sequence[int]], offset=-1) -> Polytope:
    """Polytope ``{g : <g, u> >= offset}`` for the columns ``u`` of ``matrix``."""
    columns = list(zip(*matrix))
    return polytope_from_hrep(HalfSpace(tuple(c), Fraction(offset)) for c in columns)


def vertices_by_subsets(halfspaces: Sequence[HalfSpace]) -> set[tuple[Fraction, ...]]:
    """Brute-force vertex enumeration.

    Tries every d-subset of the inequalities: when the subsystem is regular,
    its unique solution is a vertex iff it satisfies every inequality.  Kept
    as an oracle independent of the double-description code.
    """
    hs = list(halfspaces)
    d = hs[0].dim
    found = set()
    for subset in combinations(hs, d):
        A = RatMatrix([h.normal for h in subset])
        try:
            inv = mat_inverse(A)
        except SingularMatrixError:
            continue
        x = inv.apply([h.offset for h in subset])
        if all(h.contains(x) for h in hs):
            found.add(x)
    return found


def cube(d: int, radius=1, center=None) -> Polytope:
    center = vector(center or [0] * d)
    hs = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        hs.append(HalfSpace(tuple(e), center[i] - radius))
        e[i] = -1
        hs.append(HalfSpace(tuple(e), -center[i] - radius))
    return polytope_from_hrep(hs)


def simplex(d: int) -> Polytope:
    """conv(0, e_1, ..., e_d)."""
    hs = [HalfSpace(tuple(int(i == j) for j in range(d)), 0) for i in range(d)]
    hs.append(HalfSpace((-1,) * d, -1))
    return polytope_from_hrep(hs)


# --------------------------------------------------------------------------
# combinatorics


def f_vector(p: Polytope) -> FVector:
    return FVector(tuple(len(p.faces[k]) for k in range(-1, p.dim + 1)))


def vertex_degree_histogram(p: Polytope) -> dict[int, int]:
    deg = Counter()
    for a, b in p.edges:
        deg[a] += 1
        deg[b] += 1
    return dict(sorted(Counter(deg[i] for i in range(p.n_vertices)).items()))


def _incidence_graph(p: Polytope) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from((("v", i) for i in range(p.n_vertices)), kind="v")
    g.add_nodes_from((("f", j) for j in range(p.n_facets)), kind="f")
    for j, m in enumerate(p.facet_masks):
        for i in range(p.n_vertices):
            if m >> i & 1:
                g.add_edge(("v", i), ("f", j))
    return g


def _refined_colors(g: nx.Graph) -> dict:
    """Stable colour of every node after Weisfeiler-Leman refinement."""
    hashes = nx.weisfeiler_lehman_subgraph_hashes(g, node_attr="kind", iterations=g.number_of_nodes() // 2 or 1)
    return {node: h[-1] for node, h in hashes.items()}


def _facet_bijections(p: Polytope, q: Polytope):
    """Facet bijections of p onto q that carry vertex incidences exactly.

    A vertex is determined by the set of facets through it, so a facet
    bijection that maps the family of vertex facet-sets of p onto that of q
    is an incidence isomorphism.  Facets are matched within refined colour
    classes; after each choice, the vertex facet-sets restricted to the
    facets assigned so far must agree as multisets.
    """
    if (p.dim, p.n_vertices, p.n_facets) != (q.dim, q.n_vertices, q.n_facets):
        return
    cp, cq = _refined_colors(_incidence_graph(p)), _refined_colors(_incidence_graph(q))
    if sorted(cp.values()) != sorted(cq.values()):
        return
    nf = p.n_facets
    pv = [frozenset(j for j in range(nf) if p.facet_masks[j] >> i & 1) for i in range(p.n_vertices)]
    qv = [frozenset(j for j in range(nf) if q.facet_masks[j] >> i & 1) for i in range(q.n_vertices)]
    # most constrained colour classes first
    sizes = Counter(cp[("f", j)] for j in range(nf))
    order = sorted(range(nf), key=lambda j: (sizes[cp[("f", j)]], j))

    def consistent(k: int, fmap: dict) -> bool:
        assigned = order[:k]
        image = [fmap[j] for j in assigned]
        left = Counter(tuple(j in s for j in assigned) for s in pv)
        right = Counter(tuple(j in s for j in image) for s in qv)
        return left == right

    def extend(k: int, fmap: dict, used: set):
        if k == nf:
            yield dict(fmap)
            return
        j = order[k]
        for t in range(nf):
            if t in used or cq[("f", t)] != cp[("f", j)]:
                continue
            fmap[j] = t
            if consistent(k + 1, fmap):
                used.add(t)
                yield from extend(k + 1, fmap, used)
                used.discard(t)
            del fmap[j]

    index = {s: i for i, s in enumerate(qv)}
    for fmap in extend(0, {}, set()):
        vmap = {i: index[frozenset(fmap[j] for j in s)] for i, s in enumerate(pv)}
        yield vmap, fmap


def is_combinatorially_isomorphic(p: Polytope, q: Polytope) -> tuple[bool, dict | None]:
    """Isomorphism of vertex-facet incidences.

    Returns ``(True, witness)`` where ``witness`` maps vertex indices of ``p``
    to vertex indices of ``q``, or ``(False, None)``.
    """
    for vmap, _ in _facet_bijections(p, q):
        return True, vmap
    return False, None


def combinatorial_isomorphisms(p: Polytope, q: Polytope):
    """Yield every incidence isomorphism as (vertex_map, facet_map)."""
    yield from _facet_bijections(p, q)


# --------------------------------------------------------------------------
# lattice questions


def is_lattice_polytope(p: Polytope) -> bool:
    return all(x.denominator == 1 for v in p.vertices for x in v)


def is_reflexive(p: Polytope) -> bool:
    """Lattice polytope whose facets all read <x, u_F> >= -1 with u_F primitive."""
    return is_lattice_polytope(p) and all(h.offset == -1 for h in p.facets)


def _lattice_points(p: Polytope, strict: bool, dilation: int = 1) -> np.ndarray:
    d = p.dim
    lo = [ceil(min(v[i] for v in p.vertices) * dilation) for i in range(d)]
    hi = [floor(max(v[i] for v in p.vertices) * dilation) for i in range(d)]
    if any(a > b for a, b in zip(lo, hi)):
        return np.zeros((0, d), dtype=np.int64)
    N = np.array([h.normal for h in p.facets], dtype=np.int64)
    # integer x: <n,x> >= c  <=>  <n,x> >= ceil(c);  <n,x> > c  <=>  <n,x> >= floor(c) + 1
    bounds = np.array(
        [floor(h.offset * dilation) + 1 if strict else ceil(h.offset * dilation) for h in p.facets],
        dtype=np.int64,
    )
    tail = np.stack(
        np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo[1:], hi[1:])], indexing="ij"), axis=-1
    ).reshape(-1, d - 1) if d > 1 else np.zeros((1, 0), dtype=np.int64)
    chunks = []
    for x0 in range(lo[0], hi[0] + 1):
        pts = np.hstack([np.full((tail.shape[0], 1), x0, dtype=np.int64), tail])
        ok = np.all(pts @ N.T >= bounds, axis=1)
        chunks.append(pts[ok])
    return np.vstack(chunks) if chunks else np.zeros((0, d), dtype=np.int64)


def lattice_points(p: Polytope, dilation: int = 1) -> list[tuple[int, ...]]:
    """Integer points of ``dilation * p`` by bounding-box enumeration."""
    return sorted(tuple(int(x) for x in row) for row in _lattice_points(p, False, dilation))


def count_lattice_points(p: Polytope, dilation: int = 1) -> int:
    return int(_lattice_points(p, False, dilation).shape[0])


def interior_lattice_points(p: Polytope) -> list[tuple[int, ...]]:
    return sorted(tuple(int(x) for x in row) for row in _lattice_points(p, True))


# --------------------------------------------------------------------------
# transformations


def translate(p: Polytope, v: Sequence) -> Polytope:
    v = vector(v)
    if len(v) != p.dim:
        raise ValueError("translation vector has the wrong dimension")
    facets = tuple(HalfSpace(h.normal, h.offset + h.value(v)) for h in p.facets)
    verts = tuple(tuple(a + b for a, b in zip(x, v)) for x in p.vertices)
    return Polytope(p.dim, facets, verts)


def linear_image(p: Polytope, matrix: RatMatrix) -> Polytope:
    """Image under an invertible linear map; both representations are pushed forward."""
    inv_t = mat_inverse(matrix).transpose()
    facets = tuple(HalfSpace(inv_t.apply(h.normal), h.offset) for h in p.facets)
    verts = tuple(matrix.apply(v) for v in p.vertices)
    return Polytope(p.dim, facets, verts)


def normal_multiset(p: Polytope) -> Counter:
    return Counter(h.normal for h in p.facets)
