"""Exact scalar and dense matrix arithmetic over prime fields and the rationals.

Scalars are plain Python values in canonical form: residues (``int`` in
``[0, p)``) for a prime field, ``fractions.Fraction`` (always reduced, positive
denominator) for the rationals.  Every matrix routine is pure, exact, and uses
deterministic first-nonzero pivoting, so echelon forms and kernel bases
reproduce bit for bit across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

Scalar = Union[int, Fraction]

# Moduli stay below 2^31 so products fit comfortably in 64-bit intermediates.
MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; these bases are exact for all n < 3.3e9.
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """A prime field F_p (``p`` set) or the rational numbers (``p is None``)."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if not (2 <= self.p < MAX_PRIME):
                raise ValueError(f"prime modulus out of range [2, 2^31): {self.p}")
            if not _is_prime(self.p):
                raise ValueError(f"modulus is not prime: {self.p}")

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(p)

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def zero(self) -> Scalar:
        return 0 if self.p is not None else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.p is not None else Fraction(1)

    def from_int(self, n: int) -> Scalar:
        return n % self.p if self.p is not None else Fraction(n)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return pow(a, self.p - 2, self.p) if self.p is not None else 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def power(self, a: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.power(self.inv(a), -e)
        return pow(a, e, self.p) if self.p is not None else a**e

    def parse(self, text: Union[int, str]) -> Scalar:
        """Parse an integer or an ``"a/b"`` fraction string into a canonical scalar."""
        if isinstance(text, int):
            return self.from_int(text)
        s = text.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            if self.p is not None:
                return self.div(self.from_int(int(num)), self.from_int(int(den)))
            return Fraction(int(num), int(den))
        return self.from_int(int(s))

    def format(self, a: Scalar) -> str:
        return str(a)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"


def field_inverse(x: Scalar, f: Field) -> Scalar:
    """Multiplicative inverse of ``x`` in ``f``; raises ZeroDivisionError at 0."""
    return f.inv(x)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with entries in a fixed field."""

    field: Field
    nrows: int
    ncols: int
    entries: tuple[tuple[Scalar, ...], ...]

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(r) for r in rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return Matrix(field, len(rows), ncols, rows)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        one, zero = field.one(), field.zero()
        return Matrix(field, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            self.ncols,
            self.nrows,
            tuple(tuple(self.entries[i][j] for i in range(self.nrows)) for j in range(self.ncols)),
        )

    def mat_vec(self, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero()
            for a, b in zip(row, v):
                if a != 0 and b != 0:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def take_rows(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(indices), self.ncols, tuple(self.entries[i] for i in indices))


class RrefResult(NamedTuple):
    matrix: Matrix
    pivot_cols: tuple[int, ...]
    rank: int


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns the (unique) RREF of ``m`` together with its strictly increasing
    pivot columns.  Row space is preserved; the output is deterministic, which
    downstream kernel-basis computations rely on.
    """
    f = m.field
    rows = [list(r) for r in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        if r >= m.nrows:
            break
        piv = next((i for i in range(r, m.nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        inv = f.inv(rows[r][c])
        if inv != 1:
            rows[r] = [f.mul(inv, x) for x in rows[r]]
        lead = rows[r]
        for i in range(m.nrows):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(rows[i], lead)]
        pivots.append(c)
        r += 1
    reduced = Matrix(f, m.nrows, m.ncols, tuple(tuple(row) for row in rows))
    return RrefResult(reduced, tuple(pivots), len(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel_basis(m: Matrix) -> Matrix:
    """Canonical basis (as rows) of the right kernel {c : m @ c = 0}.

    One basis vector per free column, produced by back-substitution from the
    RREF: the vector has 1 at its free column and minus the RREF entry at each
    pivot column.  Row count equals ncols - rank.
    """
    f = m.field
    red, pivots, rk = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [f.zero()] * m.ncols
        v[fc] = f.one()
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(red.entries[i][fc])
        basis.append(tuple(v))
    return Matrix(f, len(basis), m.ncols, tuple(basis))


def reduce_by_rref(v: Sequence[Scalar], red: Matrix, pivot_cols: Sequence[int]) -> list[Scalar]:
    """Residual of ``v`` after clearing the pivot coordinates of an RREF basis."""
    f = red.field
    out = list(v)
    for i, pc in enumerate(pivot_cols):
        coef = out[pc]
        if coef != 0:
            row = red.entries[i]
            out = [f.sub(x, f.mul(coef, y)) for x, y in zip(out, row)]
    return out


def in_row_space(v: Sequence[Scalar], m: Matrix) -> bool:
    """True iff ``v`` is a linear combination of the rows of ``m``."""
    if len(v) != m.ncols:
        raise ValueError("dimension mismatch")
    red, pivots, _ = rref(m)
    return all(x == 0 for x in reduce_by_rref(v, red, pivots))


class IncrementalRank:
    """Echelon accumulator for inserting rows one at a time.

    Used by the subset searches: keeps forward-eliminated rows so the rank of
    a growing row prefix costs one elimination pass per inserted row.  State
    can be snapshotted cheaply (list copy) for depth-first backtracking.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list[tuple[int, tuple[Scalar, ...]]] = []  # (pivot col, reduced row)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def snapshot(self) -> list[tuple[int, tuple[Scalar, ...]]]:
        return list(self.rows)

    def restore(self, snap: list[tuple[int, tuple[Scalar, ...]]]) -> None:
        self.rows = snap

    def insert(self, row: Sequence[Scalar]) -> bool:
        """Insert a row; returns True if it increased the rank.

        Rows are kept in insertion order: each stored row is already reduced
        against all earlier ones, so clearing pivots in that order never
        reintroduces a cleared coordinate.
        """
        f = self.field
        cur = list(row)
        for pc, reduced in self.rows:
            coef = cur[pc]
            if coef != 0:
                cur = [f.sub(x, f.mul(coef, y)) for x, y in zip(cur, reduced)]
        lead = next((c for c, x in enumerate(cur) if x != 0), None)
        if lead is None:
            return False
        inv = f.inv(cur[lead])
        if inv != 1:
            cur = [f.mul(inv, x) for x in cur]
        self.rows.append((lead, tuple(cur)))
        return True
