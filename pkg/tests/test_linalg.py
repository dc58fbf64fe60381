from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterpoly.linalg import (
    AffineMap,
    DimensionError,
    RatMatrix,
    SingularMatrixError,
    as_rational,
    format_rational,
    integer_rank,
    mat_det,
    mat_inverse,
    mat_mul,
    parse_rational,
    primitive_integer_vector,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def square(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)


def leibniz_det(rows):
    """Permutation expansion; shares no code with Gaussian elimination."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = Fraction(-1) ** inversions
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(square))
def test_det_matches_permutation_expansion(rows):
    assert mat_det(RatMatrix(rows)) == leibniz_det(rows)


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_det_is_multiplicative(pair):
    a, b = (RatMatrix(r) for r in pair)
    assert mat_det(mat_mul(a, b)) == mat_det(a) * mat_det(b)


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(square))
def test_inverse_or_singular(rows):
    a = RatMatrix(rows)
    if mat_det(a) == 0:
        with pytest.raises(SingularMatrixError):
            mat_inverse(a)
    else:
        assert mat_mul(a, mat_inverse(a)) == RatMatrix.identity(len(rows))


def test_product_shape_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(RatMatrix([[1, 2]]), RatMatrix([[1, 2]]))


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_rational_text_round_trip():
    for text in ("3/4", "-7", "0", "-2/9"):
        assert format_rational(parse_rational(text)) == text
    assert format_rational(Fraction(6, 8)) == "3/4"


def test_primitive_vector():
    w, c = primitive_integer_vector((Fraction(2, 3), Fraction(-4, 3), 0))
    assert w == (1, -2, 0)
    assert c == Fraction(3, 2)


def test_integer_rank():
    assert integer_rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == 2
    assert integer_rank([]) == 0


def test_affine_compose_and_inverse():
    f = AffineMap(RatMatrix([[0, -1], [1, 0]]), (Fraction(1), Fraction(2)))
    g = AffineMap(RatMatrix([[2, 1], [1, 1]]), (Fraction(-3), Fraction(0)))
    x = (Fraction(5), Fraction(-1, 2))
    assert f.compose(g)(x) == f(g(x))
    assert f.inverse()(f(x)) == x
