"""Sign and exact squared magnitude of the worst-direction support value.

For a finite point set D in R^n the quantity of interest is

    v(D) = min over unit directions h of  max_i  <d_i, h>.

Its sign locates the origin relative to conv(D): negative means the origin
lies strictly outside the hull, zero means it sits on the boundary, positive
means it is interior.  The magnitude is geometric as well: |v(D)| equals the
distance from the origin to conv(D) in the negative case and the radius of
the largest origin-centered ball inside conv(D) in the positive case.  Since
v(D) is irrational in general, magnitudes are carried as exact squared
rationals; floats only appear as display annotations.

Sign decisions are made by exact feasibility and margin programs, never by
rounding: the origin lies outside the hull exactly when the convex-multiplier
system {sum(l_i d_i) = 0, sum(l_i) = 1, 0 <= l_i <= 1} is infeasible, and it
is interior exactly when the hull is full-dimensional and the multipliers can
be chosen with a strictly positive common margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .lp import LinearProgram, LpStatus, feasible, solve_lp
from .rational import Mat, Vec, _row_rank, affine_hull_dim, nullspace, solve_linear

__all__ = [
    "Trichotomy",
    "MinMaxValue",
    "minmax_sign",
    "min_norm_point_sq",
    "inradius_at_origin_sq",
    "minmax_value_sq",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Trichotomy(Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class MinMaxValue:
    """Sign plus exact squared magnitude of the worst-direction value."""

    sign: Trichotomy
    value_sq: Fraction

    def approx(self) -> float:
        """Float annotation of the signed value; the exact data is value_sq."""
        root = math.sqrt(self.value_sq)
        if self.sign is Trichotomy.NEGATIVE:
            return -root
        if self.sign is Trichotomy.POSITIVE:
            return root
        return 0.0


def _validated(points: Sequence[Vec]) -> list[Vec]:
    pts = list(points)
    if not pts:
        raise ValueError("point set must be nonempty")
    dim = pts[0].dim
    if any(p.dim != dim for p in pts):
        raise ValueError("points must share one dimension")
    return pts


def _dedupe(points: Sequence[Vec]) -> list[Vec]:
    seen: set[tuple[Fraction, ...]] = set()
    unique: list[Vec] = []
    for p in points:
        if p.entries not in seen:
            seen.add(p.entries)
            unique.append(p)
    return unique


def _hull_membership_constraints(pts: Sequence[Vec]) -> tuple[list, list]:
    """Constraints of the convex-multiplier system for the origin."""
    k = len(pts)
    n = pts[0].dim
    eqs = [(Vec.of([p[coord] for p in pts]), _ZERO) for coord in range(n)]
    eqs.append((Vec.of([_ONE] * k), _ONE))
    ineqs = [(Vec.unit(k, i), _ONE) for i in range(k)]
    ineqs += [(Vec.unit(k, i).scale(-1), _ZERO) for i in range(k)]
    return eqs, ineqs


def _relative_interior_margin(pts: Sequence[Vec]) -> Fraction:
    """max t such that the origin is a convex combination with every
    multiplier at least t; positive exactly when the origin lies in the
    relative interior of conv(pts)."""
    k = len(pts)
    n = pts[0].dim
    width = k + 1  # multipliers plus the margin variable
    eqs = [(Vec.of([p[coord] for p in pts] + [0]), _ZERO) for coord in range(n)]
    eqs.append((Vec.of([_ONE] * k + [_ZERO]), _ONE))
    ineqs = []
    for i in range(k):
        row = [_ZERO] * width
        row[i] = -_ONE
        row[k] = _ONE
        ineqs.append((Vec.of(row), _ZERO))  # t <= l_i
    outcome = solve_lp(
        LinearProgram(
            objective=Vec.unit(width, k),
            eq_constraints=tuple(eqs),
            ineq_constraints=tuple(ineqs),
        )
    )
    if outcome.status is not LpStatus.OPTIMAL or outcome.optimal_value is None:
        raise RuntimeError("margin program must be solvable when the origin is in the hull")
    return outcome.optimal_value


def minmax_sign(points: Sequence[Vec]) -> Trichotomy:
    """Exact sign of v(points); decided by rational feasibility programs."""
    pts = _validated(points)
    eqs, ineqs = _hull_membership_constraints(pts)
    if not feasible(eqs, ineqs).is_feasible:
        return Trichotomy.NEGATIVE
    n = pts[0].dim
    if affine_hull_dim(pts) == n and _relative_interior_margin(pts) > 0:
        return Trichotomy.POSITIVE
    return Trichotomy.ZERO


def _project_origin_onto_spanned_face(subset: Sequence[Vec], dim: int) -> tuple[Vec, Fraction] | None:
    """Project the origin onto aff(subset) if the subset is affinely
    independent and the projection has nonnegative barycentric coordinates.

    Returns (projection, squared distance) or None.
    """
    base = subset[0]
    diffs = [s - base for s in subset[1:]]
    if diffs:
        if _row_rank(diffs, dim) < len(diffs):
            return None  # affinely dependent; a smaller subset covers this face
        gram = Mat.of([[di.dot(dj) for dj in diffs] for di in diffs])
        rhs = Vec.of([-d.dot(base) for d in diffs])
        solution = solve_linear(gram, rhs)
        if solution is None or not solution.unique:
            raise RuntimeError("Gram system of an independent subset must be regular")
        coeffs = list(solution.point.entries)
        lead = _ONE - sum(coeffs, _ZERO)
        if lead < 0 or any(c < 0 for c in coeffs):
            return None
        projection = base
        for c, d in zip(coeffs, diffs):
            if c:
                projection = projection + d.scale(c)
    else:
        projection = base
    return projection, projection.norm_sq()


def min_norm_point_sq(points: Sequence[Vec]) -> tuple[Vec, Fraction]:
    """Nearest point of conv(points) to the origin and its squared distance.

    Exhaustive face enumeration: every affinely independent subset of at most
    n+1 points contributes the projection of the origin onto its affine hull
    whenever that projection lies inside the subset's simplex; the closest
    candidate is the answer.  Exponential in the input size by design; the
    expected scale is small.
    """
    pts = _dedupe(_validated(points))
    dim = pts[0].dim
    best: tuple[Vec, Fraction] | None = None
    for size in range(1, min(dim + 1, len(pts)) + 1):
        for subset in combinations(pts, size):
            candidate = _project_origin_onto_spanned_face(subset, dim)
            if candidate is None:
                continue
            if best is None or candidate[1] < best[1]:
                best = candidate
    assert best is not None  # singletons always produce candidates
    return best


def _supporting_halfspace(subset: Sequence[Vec], pts: Sequence[Vec], dim: int) -> tuple[Vec, Fraction] | None:
    """Hyperplane through `subset` supporting conv(pts) with the origin
    strictly on the inner side; returns (outward normal, positive offset)."""
    base = subset[0]
    diffs = [s - base for s in subset[1:]]
    kernel = nullspace(diffs, dim)
    if len(kernel) != 1:
        return None  # subset does not span a hyperplane
    normal = kernel[0]
    offset = normal.dot(base)
    sides = [normal.dot(p) - offset for p in pts]
    if all(s <= 0 for s in sides):
        pass
    elif all(s >= 0 for s in sides):
        normal, offset = -normal, -offset
    else:
        return None
    if offset <= 0:
        return None
    return normal, offset


def _inradius_unchecked(pts: Sequence[Vec]) -> Fraction:
    dim = pts[0].dim
    best: Fraction | None = None
    for subset in combinations(pts, dim):
        plane = _supporting_halfspace(subset, pts, dim)
        if plane is None:
            continue
        normal, offset = plane
        candidate = offset * offset / normal.norm_sq()
        if best is None or candidate < best:
            best = candidate
    if best is None:
        raise RuntimeError("an interior origin implies at least one facet")
    return best


def inradius_at_origin_sq(points: Sequence[Vec]) -> Fraction:
    """Squared radius of the largest origin-centered ball inside conv(points).

    Every facet hyperplane of the hull is spanned by an affinely independent
    subset of n points, so enumerating supporting hyperplanes through such
    subsets and minimizing the squared origin distance is exact.
    """
    pts = _validated(points)
    if minmax_sign(pts) is not Trichotomy.POSITIVE:
        raise ValueError("inradius requires the origin strictly inside the hull")
    return _inradius_unchecked(_dedupe(pts))


def minmax_value_sq(points: Sequence[Vec]) -> MinMaxValue:
    """Sign and exact squared magnitude of v(points)."""
    pts = _validated(points)
    sign = minmax_sign(pts)
    if sign is Trichotomy.NEGATIVE:
        _, dist_sq = min_norm_point_sq(pts)
        return MinMaxValue(sign, dist_sq)
    if sign is Trichotomy.ZERO:
        return MinMaxValue(sign, _ZERO)
    return MinMaxValue(sign, _inradius_unchecked(_dedupe(pts)))
