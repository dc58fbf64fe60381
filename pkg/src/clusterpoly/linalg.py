"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are plain tuples of
fractions; matrices are immutable :class:`RatMatrix` objects.  Nothing in
here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]

__all__ = [
    "Rational",
    "RatVector",
    "RatMatrix",
    "AffineMap",
    "DimensionError",
    "SingularMatrixError",
    "as_rational",
    "vector",
    "dot",
    "mat_mul",
    "mat_det",
    "mat_inverse",
    "apply_affine",
    "format_rational",
    "parse_rational",
    "primitive_integer_vector",
    "integer_rank",
]


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def vector(entries: Iterable) -> tuple:
    return tuple(as_rational(x) for x in entries)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"cannot pair vectors of length {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), start=0)


def format_rational(x) -> str:
    """'p/q', or 'p' when the denominator is 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def primitive_integer_vector(v: Sequence) -> tuple[tuple[int, ...], Fraction]:
    """Scale ``v`` to the primitive integer vector on the same ray.

    Returns ``(w, c)`` with ``w = c * v`` and ``c > 0``.
    """
    v = [as_rational(x) for x in v]
    if not any(v):
        raise ValueError("zero vector has no primitive representative")
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints), Fraction(lcm, g)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer (or rational) matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    if any(isinstance(x, Fraction) and x.denominator != 1 for r in m for x in r):
        m = [[Fraction(x) for x in r] for r in m]
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for r in range(rank + 1, len(m)):
            f = m[r][c]
            if f:
                row = m[r]
                m[r] = [p[c] * row[j] - f * p[j] for j in range(ncols)]
        rank += 1
        if rank == len(m):
            break
    return rank


class RatMatrix:
    """Immutable dense matrix of fractions, stored row-major."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise DimensionError("ragged matrix rows")
            width = widths.pop()
        else:
            width = ncols or 0
        if ncols is not None and width != ncols:
            raise DimensionError(f"expected {ncols} columns, got {width}")
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RatMatrix":
        if not columns:
            raise DimensionError("need at least one column")
        return cls(zip(*columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def columns(self) -> tuple:
        return tuple(zip(*self._rows)) if self._rows else ()

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._rows)
        return f"RatMatrix([{body}])"

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.columns, ncols=self.nrows)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            return mat_mul(self, other)
        return self.apply(other)

    def __neg__(self):
        return RatMatrix([[-x for x in r] for r in self._rows], ncols=self.ncols)

    def apply(self, x: Sequence) -> tuple:
        if len(x) != self.ncols:
            raise DimensionError(f"matrix has {self.ncols} columns, vector has length {len(x)}")
        return tuple(sum((a * b for a, b in zip(row, x)), start=Fraction(0)) for row in self._rows)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self._rows]

    def det(self) -> Fraction:
        return mat_det(self)

    def inverse(self) -> "RatMatrix":
        return mat_inverse(self)


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bcols = b.columns
    rows = [
        [sum((x * y for x, y in zip(row, col)), start=Fraction(0)) for col in bcols]
        for row in a.rows
    ]
    return RatMatrix(rows, ncols=b.ncols)


def mat_det(a: RatMatrix) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    n, m = a.shape
    if n != m:
        raise DimensionError(f"determinant of non-square {a.shape} matrix")
    rows = [list(r) for r in a.rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det *= p
        for r in range(c + 1, n):
            f = rows[r][c] / p
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return det


def mat_inverse(a: RatMatrix) -> RatMatrix:
    """Gauss-Jordan inverse; pivots on the first nonzero entry of each column."""
    n, m = a.shape
    if n != m:
        raise DimensionError(f"inverse of non-square {a.shape} matrix")
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return RatMatrix([row[n:] for row in aug], ncols=n)


@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + translation."""

    linear: RatMatrix
    translation: tuple

    def __post_init__(self):
        n, m = self.linear.shape
        if n != m:
            raise DimensionError("affine maps here are square")
        object.__setattr__(self, "translation", vector(self.translation))
        if len(self.translation) != n:
            raise DimensionError("translation length does not match the linear part")

    @classmethod
    def linear_only(cls, matrix: RatMatrix) -> "AffineMap":
        return cls(matrix, (0,) * matrix.nrows)

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls.linear_only(RatMatrix.identity(n))

    @property
    def dim(self) -> int:
        return self.linear.nrows

    def __call__(self, x: Sequence) -> tuple:
        return apply_affine(self, x)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner."""
        return AffineMap(
            mat_mul(self.linear, inner.linear),
            tuple(a + b for a, b in zip(self.linear.apply(inner.translation), self.translation)),
        )

    def inverse(self) -> "AffineMap":
        inv = mat_inverse(self.linear)
        return AffineMap(inv, tuple(-x for x in inv.apply(self.translation)))


def apply_affine(f: AffineMap, x: Sequence) -> tuple:
    x = vector(x)
    if len(x) != f.dim:
        raise DimensionError(f"map acts on dimension {f.dim}, point has dimension {len(x)}")
    return tuple(a + b for a, b in zip(f.linear.apply(x), f.translation))
