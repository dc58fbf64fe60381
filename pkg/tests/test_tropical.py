import pytest
from hypothesis import given
from hypothesis import strategies as st

from clusterpoly import golden
from clusterpoly.flag import base_polytope_sl4, landscape_seeds, sl4_start_seed
from clusterpoly.linalg import RatMatrix
from clusterpoly.polytope import cube
from clusterpoly.seeds import MutationError, mutate_epsilon, seed_from_quiver
from clusterpoly.tropical import (
    ConventionError,
    TropicalMutation,
    apply_tropical,
    check_sign_convention,
    parse_formula,
    tropical_map,
)

SEEDS = {k: s for k, s in landscape_seeds().items() if not k.endswith("_drawn")}
points = st.lists(st.integers(-9, 9), min_size=6, max_size=6)


@pytest.mark.parametrize("name", sorted(SEEDS))
@given(g=points)
def test_pointwise_involution(name, g):
    s = SEEDS[name]
    for k in s.unfrozen:
        there = tropical_map(s, k)
        back = tropical_map(mutate_epsilon(s, k), k)
        assert back(there(g)) == tuple(g)


def test_pieces_are_unimodular_and_agree_off_column_k():
    for s in SEEDS.values():
        for k in s.unfrozen:
            tropical_map(s, k).check_invariants()


def test_pieces_agree_on_the_wall():
    m = tropical_map(sl4_start_seed(), 2)
    g = (3, 0, -1, 4, 2, 5)
    assert m.t_plus.apply(g) == m.t_minus.apply(g)


def test_displayed_formulas(pipeline):
    seeds = {lab: r.seed for lab, r in pipeline.realizations.items()}
    formulas = golden.load("mu_formulas.json")["formulas"]
    assert len(formulas) == 4
    assert check_sign_convention(seeds, formulas) == []


def test_first_formula_coefficients():
    shown = golden.load("mu_formulas.json")["formulas"][0]
    m = tropical_map(sl4_start_seed(), 2)
    assert m == parse_formula(shown["image"], 2)
    assert m((1, 1, 1, 1, 1, 1)) == (2, -1, 1, 1, 2, 1)
    assert m((1, -1, 1, 1, 1, 1)) == (1, 1, 0, 0, 1, 1)


def test_sign_mismatch_is_reported(pipeline):
    seeds = {lab: r.seed for lab, r in pipeline.realizations.items()}
    f = dict(golden.load("mu_formulas.json")["formulas"][0])
    f["image"] = ["g1 + [g2]_+", "-g2", "g3 + [-g2]_+", "g4 - [-g2]_+", "g5 + [g2]_+", "g6"]
    assert check_sign_convention(seeds, [f])


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_formula(["g1 + [g3]_+", "-g2"], 2)
    with pytest.raises(ValueError):
        parse_formula(["g1 * 2", "-g2"], 2)


def test_frozen_direction_rejected():
    with pytest.raises(MutationError):
        tropical_map(sl4_start_seed(), 4)


def test_involution_on_every_edge(pipeline, sl4_graph):
    seen = set()
    for lab, r in pipeline.realizations.items():
        for k in r.seed.unfrozen:
            moved = apply_tropical(r.polytope, tropical_map(r.seed, k))
            back = apply_tropical(moved, tropical_map(mutate_epsilon(r.seed, k), k))
            assert back == r.polytope
            node = sl4_graph.node_by_label(lab).index
            seen |= {e for e in sl4_graph.undirected_edges() if node in e}
    assert len(seen) == 21


def test_linear_map_keeps_cube_convex():
    # a map with equal pieces is linear, so the image is a parallelepiped
    s = seed_from_quiver(3, [1, 2, 3], [])
    img = apply_tropical(cube(3), tropical_map(s, 1))
    assert img == cube(3)


def test_wrong_pieces_raise():
    # this bend turns the triangle into a non-convex quadrilateral
    fold = TropicalMutation(1, RatMatrix([[-1, 0], [0, 1]]), RatMatrix([[-1, 0], [2, 1]]))
    from clusterpoly.polytope import polytope_from_vrep

    tri = polytope_from_vrep([(-2, -1), (2, -1), (0, 3)])
    with pytest.raises(ConventionError):
        apply_tropical(tri, fold)


def test_case1_from_base(polytopes):
    moved = apply_tropical(base_polytope_sl4(), tropical_map(sl4_start_seed(), 2))
    assert moved == polytopes[1]
