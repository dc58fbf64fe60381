"""Tropicalized mutation: a piecewise-linear map with two linear pieces.

For a seed with exchange matrix eps and an unfrozen direction k the map is

    g'_k = -g_k
    g'_j = g_j + [-eps_{k,j}]_+ g_k + eps_{k,j} [g_k]_+      (j != k)

which is linear on each side of the hyperplane g_k = 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RatMatrix, mat_det, mat_inverse
from .polytope import HalfSpace, Polytope, PolytopeError, polytope_from_hrep, polytope_from_vrep
from .seeds import MutationError, Seed

__all__ = [
    "TropicalMutation",
    "ConventionError",
    "tropical_map",
    "apply_tropical",
    "image_is_convex",
    "parse_formula",
    "check_sign_convention",
]


class ConventionError(RuntimeError):
    """The tropical-map constructor disagrees with a displayed reference formula."""


@dataclass(frozen=True)
class TropicalMutation:
    k: int  # 1-based splitting coordinate
    t_plus: RatMatrix  # valid on g_k >= 0
    t_minus: RatMatrix  # valid on g_k <= 0

    @property
    def dim(self) -> int:
        return self.t_plus.nrows

    def __call__(self, g: Sequence) -> tuple:
        piece = self.t_plus if g[self.k - 1] >= 0 else self.t_minus
        return piece.apply(g)

    def check_invariants(self) -> None:
        for piece in (self.t_plus, self.t_minus):
            assert piece.is_integral(), "pieces must be integer matrices"
            assert abs(mat_det(piece)) == 1, "pieces must be unimodular"
            assert list(piece.rows[self.k - 1]) == [-(j == self.k - 1) for j in range(self.dim)]
        for j in range(self.dim):
            if j != self.k - 1:
                assert [r[j] for r in self.t_plus.rows] == [r[j] for r in self.t_minus.rows]

    def to_dict(self) -> dict:
        return {"k": self.k, "t_plus": self.t_plus.to_int_rows(), "t_minus": self.t_minus.to_int_rows()}


def tropical_map(s: Seed, k: int) -> TropicalMutation:
    if k not in s.unfrozen:
        raise MutationError(f"cannot mutate in frozen or unknown direction {k}")
    n = s.n
    plus = [[int(i == j) for j in range(n)] for i in range(n)]
    minus = [row[:] for row in plus]
    for j in range(1, n + 1):
        if j == k:
            plus[j - 1][k - 1] = minus[j - 1][k - 1] = -1
            continue
        e = s.eps(k, j)
        plus[j - 1][k - 1] = max(e, 0)
        minus[j - 1][k - 1] = max(-e, 0)
    m = TropicalMutation(k, RatMatrix(plus), RatMatrix(minus))
    m.check_invariants()
    return m


def _halves(p: Polytope, k: int) -> list[tuple[int, Polytope]]:
    """The pieces of p on g_k >= 0 (sign +1) and g_k <= 0 (sign -1) that are full-dimensional."""
    out = []
    for sign in (1, -1):
        e = tuple(sign * int(j == k - 1) for j in range(p.dim))
        try:
            out.append((sign, polytope_from_hrep(list(p.facets) + [HalfSpace(e, Fraction(0))])))
        except PolytopeError as exc:
            if exc.kind not in ("empty", "degenerate"):
                raise
    return out


def apply_tropical(p: Polytope, m: TropicalMutation, check_convex: bool = True) -> Polytope:
    """Push a polytope through a tropicalized mutation.

    Split along g_k = 0, map the vertices of each half with its linear piece,
    and take the convex hull.  A half that is empty or lies inside the
    hyperplane contributes nothing new and is skipped.
    """
    if p.dim != m.dim:
        raise ValueError("dimension mismatch between polytope and map")
    images = []
    for sign, half in _halves(p, m.k):
        piece = m.t_plus if sign > 0 else m.t_minus
        images.extend(piece.apply(v) for v in half.vertices)
    result = polytope_from_vrep(images)
    if check_convex and not image_is_convex(p, m, result):
        raise ConventionError("piecewise-linear image is not convex; check the sign convention")
    return result


def image_is_convex(p: Polytope, m: TropicalMutation, hull: Polytope) -> bool:
    """Check hull == m(p) by pulling the hull back through the inverse pieces.

    m sends {g_k >= 0} to {g'_k <= 0} by t_plus and {g_k <= 0} to {g'_k >= 0}
    by t_minus, so hull lies in m(p) iff each half of the hull, mapped back by
    the matching inverse piece, stays inside p.
    """
    inv_plus = mat_inverse(m.t_plus)
    inv_minus = mat_inverse(m.t_minus)
    for sign, half in _halves(hull, m.k):
        inv = inv_minus if sign > 0 else inv_plus
        if not all(p.contains(inv.apply(v)) for v in half.vertices):
            return False
    return True


_TERM = re.compile(r"([+-]?)\s*(\[\s*(-?)\s*g(\d+)\s*\]_\+|g(\d+))")


def parse_formula(image: Sequence[str], k: int) -> TropicalMutation:
    """Turn printed coordinates such as ``"g3 - [-g2]_+"`` into the two pieces.

    ``[g_k]_+`` equals g_k on the plus side and 0 on the minus side;
    ``[-g_k]_+`` equals 0 on the plus side and -g_k on the minus side.
    """
    n = len(image)
    plus = [[0] * n for _ in range(n)]
    minus = [[0] * n for _ in range(n)]
    for row, text in enumerate(image):
        consumed = 0
        for match in _TERM.finditer(text):
            sign = -1 if match.group(1) == "-" else 1
            if match.group(5):
                j = int(match.group(5)) - 1
                plus[row][j] += sign
                minus[row][j] += sign
            else:
                j = int(match.group(4)) - 1
                if j != k - 1:
                    raise ValueError(f"bracket term on g{j + 1} but the map splits on g{k}")
                if match.group(3) == "-":
                    minus[row][j] -= sign
                else:
                    plus[row][j] += sign
            consumed += len(match.group(0).replace(" ", ""))
        if consumed != len(text.replace(" ", "")):
            raise ValueError(f"could not parse coordinate formula {text!r}")
    return TropicalMutation(k, RatMatrix(plus), RatMatrix(minus))


def check_sign_convention(seeds: dict[int, Seed], formulas: list[dict]) -> list[str]:
    """Compare tropical_map against displayed formulas.

    ``seeds`` maps node labels to the realization the formula was written
    for.  Returns a list of human-readable mismatches (empty when all agree).
    """
    problems = []
    for f in formulas:
        shown = parse_formula(f["image"], f["direction"])
        built = tropical_map(seeds[f["seed"]], f["direction"])
        for name in ("t_plus", "t_minus"):
            a, b = getattr(built, name), getattr(shown, name)
            if a != b:
                problems.append(
                    f"mu_{f['direction']} at seed {f['seed']}: {name} is {a.to_int_rows()}, "
                    f"displayed {b.to_int_rows()}"
                )
    return problems
