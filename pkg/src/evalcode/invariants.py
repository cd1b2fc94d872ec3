"""Homological invariants of a finite point set, via exact linear algebra only.

Everything here reduces to ranks and kernels of evaluation matrices: the
Hilbert function, the initial degree alpha, the regularity, separator degrees
and the v-number, and the minimum socle degree computed through an Artinian
reduction by a linear non-zerodivisor.  No Groebner bases anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .exactalg import Matrix, Scalar, kernel_basis, rank, reduce_by_rref, rref
from .geometry import PointSet
from .polyspace import (
    PolyVec,
    eliminate_variable,
    evaluation_matrix,
    linear_form,
    monomial_basis,
)


class FieldTooSmallError(RuntimeError):
    """Every linear form over this prime field vanishes at some point.

    Extending scalars is not supported; rerun over a larger prime or the
    rationals.
    """


class NotNonZeroDivisorError(ValueError):
    """The supplied linear form vanishes at a point of the set."""


class SingletonSetError(ValueError):
    """Separators need at least two points."""


@lru_cache(maxsize=4096)
def _ev_rank(points: PointSet, a: int) -> int:
    return rank(evaluation_matrix(points, a))


def hilbert_function(points: PointSet, a: int) -> int:
    """HF of the coordinate ring at degree ``a``: N_a minus the rank of ev_a."""
    if a < 0:
        raise ValueError("degree must be >= 0")
    if a == 0:
        return 1
    return len(monomial_basis(points.k, a)) - _ev_rank(points, a)


def ideal_dim(points: PointSet, a: int) -> int:
    """Dimension of the degree-``a`` part of the vanishing ideal."""
    if a < 1:
        raise ValueError("degree must be >= 1")
    return len(monomial_basis(points.k, a)) - _ev_rank(points, a)


def alpha(points: PointSet) -> int:
    """Least degree of a nonzero form vanishing on the whole set."""
    a = 1
    while True:
        if ideal_dim(points, a) > 0:
            return a
        a += 1
        # terminates: once C(a+k-1, k-1) > n the kernel is nonzero


def regularity(points: PointSet) -> int:
    """Least degree at which the Hilbert function reaches n."""
    n = points.n
    a = 0
    while hilbert_function(points, a) < n:
        a += 1
    return a


@dataclass(frozen=True)
class HilbertProfile:
    """HF values for degrees 0..reg; nondecreasing, ends at n."""

    values: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        assert self.values[0] == 1
        assert all(x <= y for x, y in zip(self.values, self.values[1:]))
        assert self.values[-1] == self.n


def hilbert_profile(points: PointSet) -> HilbertProfile:
    reg = regularity(points)
    return HilbertProfile(tuple(hilbert_function(points, i) for i in range(reg + 1)), points.n)


def separator_degree(points: PointSet, index: int) -> int:
    """Least degree of a form vanishing on all points but the ``index``-th.

    Found as the first degree where the ideal of the deleted set is strictly
    larger; the search is guaranteed to stop by reg(X), where the deleted
    rows of a full-row-rank evaluation matrix stay independent.
    """
    if points.n < 2:
        raise SingletonSetError("separator needs |X| >= 2")
    deleted = points.without(index)
    a = 1
    while True:
        if ideal_dim(deleted, a) > ideal_dim(points, a):
            return a
        a += 1


def v_number(points: PointSet) -> int:
    """Minimum separator degree over all points."""
    if points.n < 2:
        raise SingletonSetError("v-number needs |X| >= 2")
    return min(separator_degree(points, i) for i in range(points.n))


def separator_form(points: PointSet, index: int) -> PolyVec:
    """A certified separator of minimal degree: vanishes off ``index``, not at it."""
    a = separator_degree(points, index)
    deleted = points.without(index)
    f = points.field
    basis = monomial_basis(points.k, a)
    for row in kernel_basis(evaluation_matrix(deleted, a)).entries:
        cand = PolyVec(basis, f, row)
        if cand.evaluate(points.points[index]) != 0:
            return cand
    raise AssertionError("separator degree certified but no kernel witness found")


def _enumerate_projective_forms(p: int, k: int, start: int, stride: int):
    """All normalized coefficient vectors over F_p, starting at ``start`` with step ``stride``.

    The sequence visits every index exactly once (stride is coprime to the
    total), so the scan is exhaustive regardless of the seed-derived order.
    """
    total = (p**k - 1) // (p - 1)
    idx = start % total
    for _ in range(total):
        # unrank: leading position j contributes p^(k-1-j) vectors
        rem = idx
        j = 0
        while rem >= p ** (k - 1 - j):
            rem -= p ** (k - 1 - j)
            j += 1
        coeffs = [0] * k
        coeffs[j] = 1
        for pos in range(k - 1, j, -1):
            coeffs[pos] = rem % p
            rem //= p
        yield tuple(coeffs)
        idx = (idx + stride) % total


def _small_integer_vectors(k: int):
    """Nonzero integer vectors ordered by growing max-norm, lexicographic within."""
    radius = 1
    while True:
        span = list(range(-radius, radius + 1))
        for vec in _lex_vectors(span, k):
            if max(abs(x) for x in vec) == radius:
                yield vec
        radius += 1


def _lex_vectors(span, k):
    if k == 0:
        yield ()
        return
    for head in span:
        for tail in _lex_vectors(span, k - 1):
            yield (head,) + tail


def find_nzd_linear_form(points: PointSet, seed: int = 0) -> PolyVec:
    """A linear form nonvanishing at every point (a non-zerodivisor).

    Over the rationals the scan over small integer coefficient vectors always
    succeeds, since only n hyperplanes must be avoided.  Over F_p the scan is
    exhaustive over all projective linear forms in a seed-determined order and
    raises FieldTooSmallError only when no such form exists at all.
    """
    f = points.field
    if f.is_prime_field:
        p = f.p
        total = (p**points.k - 1) // (p - 1)
        start = seed % total
        stride = 1 + (seed * 2654435761 + 1) % (total - 1) if total > 1 else 1
        while total > 1 and _gcd(stride, total) != 1:
            stride += 1
        candidates = _enumerate_projective_forms(p, points.k, start, stride)
    else:
        candidates = _small_integer_vectors(points.k)
    for raw in candidates:
        coeffs = [f.from_int(c) if isinstance(c, int) else c for c in raw]
        lf = linear_form(f, coeffs)
        if all(lf.evaluate(pt) != 0 for pt in points.points):
            return lf
    raise FieldTooSmallError(
        f"every linear form over {f} vanishes at a point of the set; "
        "supply a larger prime field"
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class ArtinianReduction:
    """Degreewise data of the quotient by a linear non-zerodivisor.

    ``j_bases[i]`` is an RREF basis of the degree-i part of the reduced ideal
    inside the polynomial ring on the k-1 kept variables; ``quotient_dims[i]``
    is the dimension of the degree-i part of the Artinian quotient.  Bases run
    for degrees 0..reg+1.
    """

    lform: PolyVec
    eliminated_var: int
    j_bases: tuple[Matrix, ...]
    quotient_dims: tuple[int, ...]


def artinian_reduction(points: PointSet, lform: PolyVec) -> ArtinianReduction:
    """Cut the coordinate ring by ``lform`` and record per-degree ideal bases.

    The eliminated variable is the highest-index one with nonzero coefficient
    in ``lform`` (deterministic).  The quotient dimensions must equal the
    first differences of the Hilbert function; this is asserted.
    """
    f = points.field
    k = points.k
    for i, pt in enumerate(points.points):
        if lform.evaluate(pt) == 0:
            raise NotNonZeroDivisorError(f"linear form vanishes at point {i}")
    var = max(i for i, c in enumerate(lform.coeffs) if c != 0)
    reg = regularity(points)

    j_bases: list[Matrix] = []
    quotient_dims: list[int] = []
    for i in range(reg + 2):
        small = monomial_basis(k - 1, i)
        if i == 0:
            j_bases.append(Matrix(f, 0, 1, ()))
            quotient_dims.append(1)
            continue
        kern = kernel_basis(evaluation_matrix(points, i))
        images = []
        for row in kern.entries:
            img = eliminate_variable(PolyVec(monomial_basis(k, i), f, row), lform, var)
            images.append(img.coeffs)
        mat = Matrix(f, len(images), len(small), tuple(images))
        red, pivots, rk = rref(mat)
        basis = Matrix(f, rk, len(small), red.entries[:rk])
        j_bases.append(basis)
        quotient_dims.append(len(small) - rk)

    hf = [hilbert_function(points, i) for i in range(reg + 2)]
    diffs = [1] + [hf[i] - hf[i - 1] for i in range(1, reg + 2)]
    assert quotient_dims == diffs, "quotient dimensions disagree with HF differences"
    return ArtinianReduction(lform, var, tuple(j_bases), tuple(quotient_dims))


def socle_dimensions(points: PointSet, red: ArtinianReduction) -> tuple[int, ...]:
    """Per-degree dimension of the socle of the Artinian quotient.

    In degree i the socle is (forms killed into the degree-(i+1) ideal part by
    every variable) modulo the degree-i ideal part.  Membership conditions are
    assembled by pushing each basis monomial through multiplication by each
    variable and reducing against the RREF of the next ideal piece.
    """
    f = points.field
    k1 = points.k - 1
    reg = len(red.quotient_dims) - 2
    dims = []
    for i in range(reg + 1):
        small = monomial_basis(k1, i)
        nxt = monomial_basis(k1, i + 1)
        red_next, pivots, _ = rref(red.j_bases[i + 1])
        free_cols = [c for c in range(len(nxt)) if c not in set(pivots)]
        next_index = {e: t for t, e in enumerate(nxt.exponents)}

        # one constraint column per degree-i monomial
        cols: list[list[Scalar]] = []
        for exp in small.exponents:
            col: list[Scalar] = []
            for var in range(k1):
                shifted = list(exp)
                shifted[var] += 1
                unit = [f.zero()] * len(nxt)
                unit[next_index[tuple(shifted)]] = f.one()
                residual = reduce_by_rref(unit, red_next, pivots)
                col.extend(residual[c] for c in free_cols)
            cols.append(col)
        total_rows = k1 * len(free_cols)
        if total_rows == 0:
            annihilated = len(small)
        else:
            entries = tuple(tuple(cols[m][r] for m in range(len(small))) for r in range(total_rows))
            annihilated = len(small) - rank(Matrix(f, total_rows, len(small), entries))
        dims.append(annihilated - red.j_bases[i].nrows)
    assert dims[reg] == red.quotient_dims[reg], "top-degree socle must fill the quotient"
    return tuple(dims)


def min_socle_degree(points: PointSet, seed: int = 0) -> int:
    """Least degree with nonzero socle; independent of the non-zerodivisor choice."""
    lf = find_nzd_linear_form(points, seed)
    red = artinian_reduction(points, lf)
    dims = socle_dimensions(points, red)
    return next(i for i, d in enumerate(dims) if d > 0)


@dataclass(frozen=True)
class InvariantReport:
    """All homological invariants of one point set."""

    hf: HilbertProfile
    alpha: int
    reg: int
    socle_dims: tuple[int, ...]
    s: int
    separator_degrees: tuple[int, ...] | None
    v: int | None

    def __post_init__(self) -> None:
        if self.v is not None:
            assert self.reg >= self.v >= self.s >= self.alpha - 1
        else:
            assert self.reg >= self.s >= self.alpha - 1


def invariant_report(points: PointSet, seed: int = 0) -> InvariantReport:
    """Assemble the full invariant bundle (HF, alpha, reg, socle, separators)."""
    hf = hilbert_profile(points)
    al = alpha(points)
    reg = regularity(points)
    lf = find_nzd_linear_form(points, seed)
    dims = socle_dimensions(points, artinian_reduction(points, lf))
    s = next(i for i, d in enumerate(dims) if d > 0)
    if points.n >= 2:
        seps = tuple(separator_degree(points, i) for i in range(points.n))
        v = min(seps)
    else:
        seps, v = None, None
    return InvariantReport(hf, al, reg, dims, s, seps, v)
