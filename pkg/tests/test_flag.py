from collections import Counter
from math import factorial

import pytest

from clusterpoly import golden
from clusterpoly.flag import (
    base_polytope_sl4,
    gp_polytope,
    landscape_seeds,
    longest_element,
    m_matrix_i0,
    move_closure,
    move_graph,
    reduced_words,
    sl4_start_seed,
    string_inequalities_i0,
    string_polytope_i0,
    transport_string_polytope,
    two_move_classes,
    word_product,
)
from clusterpoly.equivalence import search_signed_permutation_map
from clusterpoly.linalg import RatMatrix, mat_mul
from clusterpoly.polytope import (
    f_vector,
    interior_lattice_points,
    is_reflexive,
    linear_image,
    normal_multiset,
    polytope_from_normal_matrix,
    translate,
)
from clusterpoly.seeds import Seed, seeds_equivalent


def stanley_count(n: int) -> int:
    """Number of reduced words of the longest permutation of S_n (hook-length formula)."""
    denom = 1
    for k in range(1, n):
        denom *= (2 * k - 1) ** (n - k)
    return factorial(n * (n - 1) // 2) // denom


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reduced_word_counts(n):
    words = reduced_words(n)
    assert len(words) == stanley_count(n)
    assert all(word_product(w, n) == longest_element(n) for w in words)
    assert set(words) == move_closure(words[0])


@pytest.mark.slow
def test_reduced_word_count_n6():
    assert len(reduced_words(6)) == stanley_count(6) == 292864


def test_drawn_move_graph():
    fig = golden.load("figure1_edges.json")
    g = move_graph(4)
    assert sorted(map(tuple, fig["words"])) == sorted(g.nodes)
    ours = {(frozenset(e), d["move"]) for *e, d in g.edges(data=True)}
    drawn = {(frozenset((tuple(e["a"]), tuple(e["b"]))), e["move"]) for e in fig["edges"]}
    assert ours == drawn
    assert Counter(m for _, m in ours) == {"2-move": 10, "3-move": 8}


def test_seed_table_picks_one_word_per_class():
    classes = two_move_classes(4)
    rows = golden.load("table1.json")["rows"]
    assert len(classes) == 8
    which = [next(i for i, c in enumerate(classes) if tuple(r["reduced_word"]) in c) for r in rows]
    assert sorted(which) == list(range(8))
    assert sorted(r["seed"] for r in rows) == [0, 7, 8, 9, 10, 11, 12, 13]


def test_dynkin_flip_matches_iota():
    """Reversing the Dynkin diagram (i -> 4 - i) acts on the table like the involution iota."""
    classes = two_move_classes(4)
    rows = golden.load("table1.json")["rows"]
    seed_of_class = {next(i for i, c in enumerate(classes) if tuple(r["reduced_word"]) in c): r["seed"] for r in rows}
    iota = {int(k): v for k, v in golden.load("figure4_edges.json")["involutions"]["iota"].items()}
    for r in rows:
        flipped = tuple(4 - i for i in r["reduced_word"])
        cls = next(i for i, c in enumerate(classes) if flipped in c)
        assert seed_of_class[cls] == iota[r["seed"]]


def test_string_inequalities_match_normal_matrix():
    cols = [tuple(c) for c in zip(*golden.matrix("string_normals_i0.json"))]
    assert sorted(h.normal for h in string_inequalities_i0()) == sorted(cols)


def test_m_matrix_times_string_normals_gives_base_normals():
    product = mat_mul(m_matrix_i0(), RatMatrix(golden.matrix("string_normals_i0.json")))
    assert sorted(product.columns) == sorted(tuple(c) for c in zip(*golden.matrix("eq2_2.json")))


def test_string_route_reproduces_base_polytope():
    assert transport_string_polytope() == base_polytope_sl4()
    assert normal_multiset(base_polytope_sl4()) == normal_multiset(polytope_from_normal_matrix(golden.matrix("eq2_2.json")))


def test_row_vector_convention_does_not_reproduce_base():
    moved = linear_image(string_polytope_i0(), m_matrix_i0().transpose())
    interior = interior_lattice_points(moved)
    assert interior == [(6, 8, 3, 6, 3, 1)]
    centred = translate(moved, tuple(-x for x in interior[0]))
    assert centred != base_polytope_sl4()


def test_base_polytope():
    p = base_polytope_sl4()
    assert p.n_vertices == 40
    assert f_vector(p).as_tuple() == (1, 40, 132, 186, 139, 57, 12, 1)
    assert is_reflexive(p)


@pytest.mark.parametrize("seed,size", [(1, 13), (2, 13), (3, 13), (4, 14), (5, 14), (6, 13)])
def test_case_matrices(polytopes, seed, size):
    cols = [tuple(c) for c in zip(*golden.case_matrix(seed))]
    assert len(cols) == size
    assert sorted(h.normal for h in polytopes[seed].facets) == sorted(cols)


def test_non_tree_edges_agree(pipeline):
    assert len(pipeline.cycle_checks) == 21 - 13


def test_realizations_match_drawn_quivers(pipeline):
    seeds = landscape_seeds()
    for lab, r in pipeline.realizations.items():
        names = [k for k in seeds if k.rstrip("ab") == str(lab)]
        assert any(seeds_equivalent(seeds[k], r.seed) for k in names), lab


def test_literal_sign_rule_fails():
    """eps'_ij = eps_ij + sgn(eps_ij)[eps_ik eps_kj]_+ does not lead from t0 to t1."""
    s = sl4_start_seed()
    k = 2
    rows = []
    for i in s.unfrozen:
        row = []
        for j in range(1, s.n + 1):
            e = s.eps(i, j)
            if k in (i, j):
                row.append(-e)
            else:
                sign = (e > 0) - (e < 0)
                row.append(e + sign * max(s.eps(i, k) * s.eps(k, j), 0))
        rows.append(tuple(row))
    literal = Seed(s.n, s.unfrozen, tuple(rows))
    assert seeds_equivalent(literal, landscape_seeds()["1"]) is None


@pytest.mark.parametrize("seed,column,expected", [(7, 1, (1, 1, 1, 1, 0, 0)), (9, 8, (-1, 0, 0, 0, -1, 0)), (11, 5, (0, 0, 0, 1, 0, 0))])
def test_gp_matrix_columns(seed, column, expected):
    assert tuple(r[column - 1] for r in golden.gp_matrix(seed)) == expected


def test_gp_t7_printed_entry():
    data = golden.load("gp_t7.json")
    printed = polytope_from_normal_matrix(data["matrix_printed"])
    fixed = polytope_from_normal_matrix(data["matrix"])
    assert printed.n_vertices == 60
    assert f_vector(fixed).as_tuple() == (1, 42, 141, 202, 153, 63, 13, 1)


@pytest.mark.parametrize("seed", [7, 9, 11])
def test_gp_polytopes_are_the_transported_ones_up_to_relabelling(polytopes, seed):
    assert search_signed_permutation_map(gp_polytope(seed), polytopes[seed]) is not None


def test_sl3_polytope(sl3_polytope):
    assert is_reflexive(sl3_polytope)
    # the Gelfand-Cetlin polytope of SL_3: 7 vertices, 11 edges, one facet per matrix column
    assert f_vector(sl3_polytope).as_tuple() == (1, 7, 11, 6, 1)
