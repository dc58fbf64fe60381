
import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterpoly import golden
from clusterpoly.equivalence import (
    NotUnimodularError,
    UnimodularMap,
    apply_map_to_polytope,
    catalog_maps,
    class_preserving_automorphisms,
    fingerprint,
    normalize,
    orbits,
    parse_coordinate_change,
    parse_involutions,
    search_incidence_map,
    search_signed_permutation_map,
    signed_permutation_map,
    verify_unimodular_map,
)
from clusterpoly.flag import gp_polytope
from clusterpoly.linalg import AffineMap, RatMatrix
from clusterpoly.polytope import cube, is_combinatorially_isomorphic, translate
from clusterpoly.verify import classification

INVOLUTIONS = parse_involutions(golden.load("figure4_edges.json")["involutions"])


def test_unimodular_map_validation():
    with pytest.raises(NotUnimodularError):
        UnimodularMap.linear([[2, 0], [0, 1]])
    with pytest.raises(NotUnimodularError):
        UnimodularMap(AffineMap(RatMatrix([[1, 0], [0, 1]]), ("1/2", 0)))
    u = UnimodularMap.linear([[1, 1], [0, 1]])
    assert u.inverse().compose(u).matrix == RatMatrix.identity(2)


def test_parse_coordinate_change():
    u = parse_coordinate_change(["-g2", "g3", "g1"])
    assert u((1, 2, 3)) == (-2, 3, 1)
    with pytest.raises(ValueError):
        parse_coordinate_change(["g1", "g1", "g2"])


def test_catalog(polytopes):
    maps = catalog_maps()
    assert len(maps) == 5
    for m in maps:
        assert m["map"].matrix.is_integral() and m["map"].inner.translation == (0,) * 6
        src = gp_polytope(m["source_polytope"]) if "source_polytope" in m else polytopes[m["source"]]
        assert verify_unimodular_map(src, polytopes[m["target"]], m["map"])
        assert apply_map_to_polytope(src, m["map"]) == polytopes[m["target"]]


def test_catalog_maps_are_substitutions(polytopes):
    """The printed change for t4 -> t5 only works read as a substitution."""
    m = next(m for m in catalog_maps() if m["source"] == 4)
    assert not verify_unimodular_map(polytopes[4], polytopes[5], m["substitution"])


def test_search_examples(polytopes):
    u = search_signed_permutation_map(polytopes[4], polytopes[5])
    assert u is not None and verify_unimodular_map(polytopes[4], polytopes[5], u)
    assert search_signed_permutation_map(polytopes[0], polytopes[1]) is None
    assert search_signed_permutation_map(polytopes[6], polytopes[6]) is not None


def test_incidence_search_reaches_beyond_signed_permutations(polytopes):
    assert search_signed_permutation_map(polytopes[0], polytopes[8]) is None
    u = search_incidence_map(polytopes[0], polytopes[8])
    assert u is not None and verify_unimodular_map(polytopes[0], polytopes[8], u)
    assert search_incidence_map(polytopes[1], polytopes[6]) is None


def test_fingerprint_of_cube():
    fp = fingerprint(cube(6))
    assert fp.facet_count == 12
    assert dict(fp.degree_histogram) == {6: 64}
    assert fp.lattice_point_counts == (3**6, 5**6)


@settings(max_examples=15, deadline=None)
@given(st.permutations(range(6)), st.lists(st.sampled_from([1, -1]), min_size=6, max_size=6),
       st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.sampled_from([0, 2, 4, 6]))
def test_fingerprint_is_invariant(polytopes, perm, signs, shift, seed):
    p = polytopes[seed]
    q = translate(apply_map_to_polytope(p, signed_permutation_map(perm, signs)), shift)
    assert fingerprint(q) == fingerprint(p)
    back, centre = normalize(q)
    assert centre == tuple(shift)
    assert search_signed_permutation_map(back, p) is not None


def test_classes():
    c = classification()
    assert c.classes == [[0, 8, 12, 13], [1, 3, 7, 10], [2, 9], [4, 5], [6, 11]]
    assert c.separated == [(1, 6)]


def test_witnesses_verify(polytopes):
    c = classification()
    for w in c.witnesses:
        assert verify_unimodular_map(polytopes[w.source], polytopes[w.target], w.map)
    linked = nx.Graph()
    linked.add_edges_from((w.source, w.target) for w in c.witnesses)
    for cls in c.classes:
        if len(cls) > 1:
            assert nx.is_connected(linked.subgraph(cls))


def test_case2_and_case5_differ(polytopes):
    assert fingerprint(polytopes[1]).f_vector == fingerprint(polytopes[6]).f_vector
    assert not is_combinatorially_isomorphic(polytopes[1], polytopes[6])[0]


def test_involutions():
    i, j = INVOLUTIONS["iota"], INVOLUTIONS["iota_prime"]
    assert i[0] == 13
    assert all(i[i[k]] == k and j[j[k]] == k and i[j[k]] == j[i[k]] for k in range(14))
    o = orbits([i, j], range(14))
    assert o == [[0, 13], [1, 3, 7, 10], [2, 9], [4, 5], [6, 11], [8, 12]]


def test_exactly_four_class_preserving_symmetries():
    g = nx.Graph(tuple(e) for e in golden.load("figure4_edges.json")["edges"])
    autos = class_preserving_automorphisms(g, classification().classes)
    assert len(autos) == 4
    i, j = INVOLUTIONS["iota"], INVOLUTIONS["iota_prime"]
    assert i in autos and j in autos
    # without the class constraint the associahedron graph has 12 symmetries
    assert len(class_preserving_automorphisms(g, [list(range(14))])) == 12


def test_twelve_facets_exactly_on_first_class(polytopes):
    assert [k for k, p in polytopes.items() if p.n_facets == 12] == [0, 8, 12, 13]


def test_classification_json():
    data = classification().to_dict()
    assert set(data) >= {"classes", "involutions", "witness_maps"}
    assert data["involutions"]["iota"]["0"] == 13
    assert all(len(w["matrix"]) == 6 for w in data["witness_maps"])
