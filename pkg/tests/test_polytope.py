from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterpoly.linalg import RatMatrix, integer_rank
from clusterpoly.polytope import (
    HalfSpace,
    Polytope,
    PolytopeError,
    combinatorial_isomorphisms,
    count_lattice_points,
    cube,
    f_vector,
    interior_lattice_points,
    is_combinatorially_isomorphic,
    is_reflexive,
    lattice_points,
    linear_image,
    polytope_from_hrep,
    polytope_from_normal_matrix,
    polytope_from_vrep,
    simplex,
    translate,
    vertex_degree_histogram,
    vertices_by_subsets,
)


def cross_polytope(d):
    return polytope_from_vrep([tuple(s * (i == j) for j in range(d)) for i in range(d) for s in (1, -1)])


def rank_adjacency_histogram(p: Polytope) -> dict[int, int]:
    """Vertices u, v span an edge iff the facets through both have normals of rank d - 1."""
    tight = [[h for h in p.facets if h.value(v) == h.offset] for v in p.vertices]
    deg = Counter()
    for a, b in combinations(range(p.n_vertices), 2):
        common = [h.normal for h in tight[a] if h in tight[b]]
        if integer_rank(common) == p.dim - 1:
            deg[a] += 1
            deg[b] += 1
    return dict(Counter(deg[i] for i in range(p.n_vertices)))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_cube_f_vector(d):
    fv = f_vector(cube(d))
    assert [fv[k] for k in range(d)] == [comb(d, k) * 2 ** (d - k) for k in range(d)]
    assert fv.euler_characteristic_holds()


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_simplex_and_cross_polytope_f_vectors(d):
    fv = f_vector(simplex(d))
    assert [fv[k] for k in range(d)] == [comb(d + 1, k + 1) for k in range(d)]
    cp = f_vector(cross_polytope(d))
    assert [cp[k] for k in range(d)] == [2 ** (k + 1) * comb(d, k + 1) for k in range(d)]


def test_cube_degrees_and_facets():
    c = cube(6)
    assert vertex_degree_histogram(c) == {6: 64}
    assert c.n_facets == 12


def test_hrep_errors():
    with pytest.raises(PolytopeError) as err:
        polytope_from_hrep([HalfSpace((1, 0), 1), HalfSpace((-1, 0), 1), HalfSpace((0, 1), 0), HalfSpace((0, -1), -1)])
    assert err.value.kind == "empty"
    with pytest.raises(PolytopeError) as err:
        polytope_from_hrep([HalfSpace((1, 0), 0), HalfSpace((0, 1), 0)])
    assert err.value.kind == "unbounded"
    with pytest.raises(PolytopeError) as err:
        polytope_from_hrep([HalfSpace((1, 0), 0), HalfSpace((-1, 0), 0), HalfSpace((0, 1), -1), HalfSpace((0, -1), -1)])
    assert err.value.kind == "degenerate"


def test_redundant_inequality_dropped():
    hs = list(cube(3).facets) + [HalfSpace((1, 1, 1), -10)]
    assert polytope_from_hrep(hs) == cube(3)


def test_vrep_drops_interior_points():
    pts = list(cube(3).vertices) + [(0, 0, 0), (Fraction(1, 2), 0, 0)]
    assert polytope_from_vrep(pts) == cube(3)


points3 = st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=4, max_size=12, unique=True)


@settings(max_examples=40, deadline=None)
@given(points3)
def test_random_hull_agrees_with_subset_oracle(pts):
    try:
        p = polytope_from_vrep(pts)
    except PolytopeError as exc:
        assert exc.kind == "degenerate"
        assert integer_rank([list(x) + [1] for x in pts]) < 4
        return
    assert all(p.contains(x) for x in pts)
    assert set(p.vertices) <= {tuple(map(Fraction, x)) for x in pts}
    assert vertices_by_subsets(p.facets) == set(p.vertices)
    assert polytope_from_hrep(p.facets) == p
    assert f_vector(p).euler_characteristic_holds()
    assert vertex_degree_histogram(p) == rank_adjacency_histogram(p)


def test_subset_oracle_on_all_polytopes(polytopes, sl3_polytope):
    for p in [*polytopes.values(), sl3_polytope]:
        assert vertices_by_subsets(p.facets) == set(p.vertices)


def test_degree_histograms_by_rank_test(polytopes):
    for k in (1, 4, 6):
        assert vertex_degree_histogram(polytopes[k]) == rank_adjacency_histogram(polytopes[k])


def test_degree_sum_is_twice_edge_count(polytopes):
    for p in polytopes.values():
        hist = vertex_degree_histogram(p)
        assert sum(d * c for d, c in hist.items()) == 2 * f_vector(p)[1]


def test_json_round_trip(polytopes):
    p = polytopes[4]
    assert Polytope.from_dict(p.to_dict()) == p


@pytest.mark.parametrize("d,k", [(2, 1), (2, 3), (3, 2), (4, 2)])
def test_simplex_lattice_points(d, k):
    assert count_lattice_points(simplex(d), k) == comb(k + d, d)


def test_cube_lattice_points_and_reflexivity():
    assert count_lattice_points(cube(3)) == 27
    assert interior_lattice_points(cube(3)) == [(0, 0, 0)]
    assert is_reflexive(cube(4))
    assert not is_reflexive(cube(2, radius=2))
    assert not is_reflexive(simplex(3))
    assert lattice_points(cube(1)) == [(-1,), (0,), (1,)]


def test_translate_and_linear_image():
    c = cube(2)
    moved = translate(c, (3, -1))
    assert moved == polytope_from_vrep([(a + 3, b - 1) for a, b in c.vertices])
    shear = RatMatrix([[1, 1], [0, 1]])
    assert linear_image(c, shear) == polytope_from_vrep([shear.apply(v) for v in c.vertices])


def test_combinatorial_isomorphism():
    square = cube(2)
    rhombus = polytope_from_vrep([(1, 0), (0, 2), (-1, 0), (0, -2)])
    ok, witness = is_combinatorially_isomorphic(square, rhombus)
    assert ok and sorted(witness.values()) == [0, 1, 2, 3]
    assert not is_combinatorially_isomorphic(cube(3), cross_polytope(3))[0]
    # the square has the dihedral group of order 8 as automorphisms
    assert sum(1 for _ in combinatorial_isomorphisms(square, square)) == 8
    assert sum(1 for _ in combinatorial_isomorphisms(cube(3), cube(3))) == 48


def test_normal_matrix_constructor():
    p = polytope_from_normal_matrix([[1, -1, 0, 0], [0, 0, 1, -1]])
    assert p == cube(2)
