"""Projective point sets and their position predicates.

Points are stored as normalized homogeneous coordinate tuples (leftmost
nonzero coordinate equal to 1), which fixes the representatives used by the
evaluation maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import NamedTuple, Sequence

from .exactalg import Field, Matrix, Scalar, rank

UNIFORM_POSITION_CAP = 12


class ZeroVectorError(ValueError):
    """A projective point cannot be the zero vector."""


class DuplicatePointError(ValueError):
    def __init__(self, first: int, second: int):
        super().__init__(f"points {first} and {second} coincide after normalization")
        self.first = first
        self.second = second


class TooLargeError(ValueError):
    """Input exceeds the brute-force budget for this predicate."""


def normalize(raw: Sequence[Scalar], field: Field) -> tuple[Scalar, ...]:
    """Scale so the leftmost nonzero coordinate is 1; rejects the zero vector."""
    lead = next((i for i, x in enumerate(raw) if x != 0), None)
    if lead is None:
        raise ZeroVectorError("cannot normalize the zero vector")
    inv = field.inv(raw[lead])
    if inv == 1:
        return tuple(raw)
    return tuple(field.mul(inv, x) for x in raw)


@dataclass(frozen=True)
class PointSet:
    """An ordered set of n distinct normalized points of P^(k-1)."""

    field: Field
    k: int
    points: tuple[tuple[Scalar, ...], ...]

    @property
    def n(self) -> int:
        return len(self.points)

    def without(self, index: int) -> "PointSet":
        pts = self.points[:index] + self.points[index + 1 :]
        return PointSet(self.field, self.k, pts)

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(self.field, self.k, tuple(self.points[i] for i in indices))

    def coordinate_matrix(self) -> Matrix:
        """The n x k matrix whose rows are the normalized representatives."""
        return Matrix(self.field, self.n, self.k, self.points)


def point_set(k: int, rows: Sequence[Sequence[Scalar]], field: Field) -> PointSet:
    """Build a PointSet from raw coordinate rows, normalizing and checking distinctness."""
    pts = []
    seen: dict[tuple[Scalar, ...], int] = {}
    for i, row in enumerate(rows):
        if len(row) != k:
            raise ValueError(f"row {i} has length {len(row)}, expected {k}")
        p = normalize([field.parse(x) if isinstance(x, str) else x for x in row], field)
        if p in seen:
            raise DuplicatePointError(seen[p], i)
        seen[p] = i
        pts.append(p)
    if not pts:
        raise ValueError("a point set needs at least one point")
    return PointSet(field, k, tuple(pts))


def rank_of(points: PointSet) -> int:
    """Rank of the coordinate matrix; the points span P^(rank-1)."""
    return rank(points.coordinate_matrix())


class HyperplaneCount(NamedTuple):
    value: int
    degenerate: bool


def hyp_hyperplane(points: PointSet) -> HyperplaneCount:
    """Maximum number of the points lying on a single hyperplane.

    For a spanning set this is n minus the minimum distance of the order-1
    code.  If the set itself lies in a hyperplane (rank < k) every point does,
    so the count is n and the result is flagged degenerate.
    """
    if rank_of(points) < points.k:
        return HyperplaneCount(points.n, True)
    from .distance import hyp_a

    value, _, _ = hyp_a(points, 1)
    return HyperplaneCount(value, False)


def is_general_linear_position(points: PointSet) -> bool:
    """True iff every subset of min(k, n) points spans a space of that dimension.

    Full rank of all size-min(k, n) subsets implies full rank of all smaller
    subsets, since a dependent subset stays dependent inside any superset.
    """
    u = min(points.k, points.n)
    mat = points.coordinate_matrix()
    for subset in combinations(range(points.n), u):
        if rank(mat.take_rows(subset)) < u:
            return False
    return True


def is_generic_position(points: PointSet) -> bool:
    """True iff the Hilbert function is maximal, min(n, C(i+k-1, k-1)), at every degree."""
    from .invariants import hilbert_function, regularity

    n, k = points.n, points.k
    reg = regularity(points)
    for i in range(reg + 1):
        if hilbert_function(points, i) != min(n, comb(i + k - 1, k - 1)):
            return False
    return True


def is_uniform_position(points: PointSet, cap: int = UNIFORM_POSITION_CAP) -> bool:
    """True iff the set and every nonempty subset are in generic position.

    Brute force over all subsets; refuses sets larger than ``cap``.
    """
    if points.n > cap:
        raise TooLargeError(f"uniform-position check capped at {cap} points, got {points.n}")
    if not is_generic_position(points):
        return False
    for size in range(1, points.n):
        for subset in combinations(range(points.n), size):
            if not is_generic_position(points.subset(subset)):
                return False
    return True
