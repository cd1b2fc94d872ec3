"""The order-``a`` evaluation code of a point set and its minimum distance.

Two independent routes are provided: a pruned subset search for the largest
proper subset on a degree-``a`` hypersurface, and (over prime fields) direct
minimum-weight enumeration of the codewords.  They must always agree and the
test suite holds them to that.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .exactalg import IncrementalRank, Matrix, kernel_basis, rank, rref
from .geometry import PointSet, TooLargeError, normalize, point_set
from .invariants import hilbert_function
from .polyspace import PolyVec, evaluation_matrix, monomial_basis

HYP_SEARCH_CAP = 24
ENUM_CAP = 10**7


class TooManyCodewordsError(RuntimeError):
    """The codeword count p^dim exceeds the enumeration budget."""


class RationalsUnsupportedError(TypeError):
    """Weight enumeration needs a finite field."""


def generator_matrix(points: PointSet, a: int) -> Matrix:
    """Canonical dim x n generator matrix of the order-``a`` code.

    Rows are the RREF basis of the column space of the evaluation matrix, so
    the output is deterministic and its row space is exactly the code.
    """
    ev = evaluation_matrix(points, a)
    red, _, rk = rref(ev.transpose())
    return Matrix(points.field, rk, points.n, red.entries[:rk])


def hyp_a(points: PointSet, a: int, force: bool = False) -> tuple[int, tuple[int, ...], PolyVec]:
    """Largest proper subset lying on a degree-``a`` hypersurface missing some point.

    Returns ``(size, witness indices, witness form)`` where the witness form
    vanishes exactly on the witness subset and nowhere else in the set.
    Subsets are scanned by descending size, lexicographically within each
    size, with branches pruned once their rows already span the full row
    space (such a subset cannot enlarge the kernel).  Worst case is
    exponential; refuses n > 24 unless ``force``.
    """
    n = points.n
    if n > HYP_SEARCH_CAP and not force:
        raise TooLargeError(f"subset search capped at {HYP_SEARCH_CAP} points; pass force=True to override")
    ev = evaluation_matrix(points, a)
    full_rank = rank(ev)
    f = points.field

    for size in range(n - 1, -1, -1):
        witness = _first_rank_deficient_subset(ev, size, full_rank)
        if witness is not None:
            return size, witness, _witness_form(points, ev, witness, a)
    raise AssertionError("unreachable: the empty subset always witnesses")


def _first_rank_deficient_subset(ev: Matrix, size: int, full_rank: int) -> tuple[int, ...] | None:
    """Lexicographically first size-``size`` row subset with rank below ``full_rank``."""
    n = ev.nrows
    if size == 0:
        return () if full_rank > 0 else None
    acc = IncrementalRank(ev.field, ev.ncols)

    def extend(start: int, chosen: list[int]) -> tuple[int, ...] | None:
        picked = len(chosen)
        if picked == size:
            return tuple(chosen)
        # prune: full-rank prefixes can never lose rank again
        if acc.rank >= full_rank:
            return None
        for i in range(start, n - (size - picked) + 1):
            snap = acc.snapshot()
            acc.insert(ev.entries[i])
            chosen.append(i)
            found = extend(i + 1, chosen)
            if found is not None:
                return found
            chosen.pop()
            acc.restore(snap)
        return None

    return extend(0, [])


def _witness_form(points: PointSet, ev: Matrix, witness: tuple[int, ...], a: int) -> PolyVec:
    """A form vanishing on the witness rows but not on the whole set."""
    f = points.field
    basis = monomial_basis(points.k, a)
    sub = ev.take_rows(witness)
    full_kernel = kernel_basis(ev)
    for row in kernel_basis(sub).entries:
        if any(x != 0 for x in ev.mat_vec(row)):
            return PolyVec(basis, f, row)
    raise AssertionError("witness subset certified but no separating form found")


@dataclass(frozen=True)
class CodeSummary:
    """Parameters of one evaluation code, with the distance witness."""

    n: int
    a: int
    dim: int
    d: int
    hyp: int
    witness: tuple[int, ...]
    witness_form: PolyVec

    def __post_init__(self) -> None:
        assert self.d == self.n - self.hyp
        assert 1 <= self.d <= self.n - self.dim + 1, "Singleton bound violated"


def min_distance(points: PointSet, a: int, known_v: int | None = None, force: bool = False) -> CodeSummary:
    """Minimum distance of the order-``a`` code, by subset search.

    ``known_v`` is an optional shortcut: once ``a`` reaches the v-number the
    distance is 1, so only size-(n-1) witnesses need scanning.  The result is
    identical either way.
    """
    n = points.n
    if known_v is not None and a >= known_v:
        ev = evaluation_matrix(points, a)
        witness = _first_rank_deficient_subset(ev, n - 1, rank(ev))
        assert witness is not None, "distance must be 1 at or beyond the v-number"
        hyp, wit, form = n - 1, witness, _witness_form(points, ev, witness, a)
    else:
        hyp, wit, form = hyp_a(points, a, force=force)
    return CodeSummary(n, a, hilbert_function(points, a), n - hyp, hyp, wit, form)


def min_distance_enum(points: PointSet, a: int, cap: int = ENUM_CAP) -> int:
    """Minimum Hamming weight over all nonzero codewords, enumerated directly.

    Only scaling classes are visited (first nonzero combination coefficient
    fixed to 1) since weight is scale invariant.  Prime fields only.
    """
    f = points.field
    if not f.is_prime_field:
        raise RationalsUnsupportedError("codeword enumeration requires a prime field")
    gen = generator_matrix(points, a)
    dim, n, p = gen.nrows, gen.ncols, f.p
    if p**dim > cap:
        raise TooManyCodewordsError(f"p^dim = {p**dim} exceeds cap {cap}")
    best = n
    rows = gen.entries
    for lead in range(dim):
        lead_row = rows[lead]
        for tail in product(range(p), repeat=dim - lead - 1):
            word = list(lead_row)
            for coef, row in zip(tail, rows[lead + 1 :]):
                if coef:
                    word = [(x + coef * y) % p for x, y in zip(word, row)]
            weight = sum(1 for x in word if x != 0)
            if weight < best:
                best = weight
    return best


def veronese_image(points: PointSet, a: int) -> PointSet:
    """The point set of all degree-``a`` monomial values, in P^(N_a - 1)."""
    ev = evaluation_matrix(points, a)
    f = points.field
    rows = [normalize(row, f) for row in ev.entries]
    return point_set(ev.ncols, rows, f)


def embedded_veronese(points: PointSet, a: int) -> PointSet:
    """The Veronese image compressed into the span, P^(dim - 1), where it is nondegenerate.

    Coordinates are the generator-matrix columns, i.e. the monomial values
    expressed in the canonical basis of the code.
    """
    gen = generator_matrix(points, a)
    cols = gen.transpose().entries
    return point_set(gen.nrows, [normalize(c, points.field) for c in cols], points.field)
