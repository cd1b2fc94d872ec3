"""Graded monomial bases, evaluation matrices, and homogeneous-form rewrites.

The monomial order is graded lexicographic with x1 > x2 > ... > xk, fixed
globally so that generator matrices and kernel bases are reproducible.
Exponent vectors are stored densely (length k).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence, TYPE_CHECKING

from .exactalg import Field, Matrix, Scalar

if TYPE_CHECKING:
    from .geometry import PointSet

MAX_VARIABLES = 16


class BadLinearFormError(ValueError):
    """The linear form has zero coefficient on the variable to eliminate."""


@dataclass(frozen=True)
class MonomialBasis:
    """All degree-``degree`` monomials in ``k`` variables, graded-lex ordered."""

    k: int
    degree: int
    exponents: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.exponents)

    def index_of(self, exponent: tuple[int, ...]) -> int:
        return _index_map(self.k, self.degree)[exponent]


def _exponents(k: int, a: int) -> list[tuple[int, ...]]:
    if k == 1:
        return [(a,)]
    out = []
    for e1 in range(a, -1, -1):
        out.extend((e1,) + tail for tail in _exponents(k - 1, a - e1))
    return out


@lru_cache(maxsize=None)
def monomial_basis(k: int, a: int) -> MonomialBasis:
    """Monomial basis of the degree-``a`` part of K[x1..xk]; size C(a+k-1, k-1)."""
    if k < 1 or a < 0:
        raise ValueError(f"need k >= 1 and a >= 0, got k={k}, a={a}")
    if k > MAX_VARIABLES:
        raise ValueError(f"at most {MAX_VARIABLES} variables supported")
    exps = tuple(_exponents(k, a))
    assert len(exps) == comb(a + k - 1, k - 1)
    return MonomialBasis(k, a, exps)


@lru_cache(maxsize=None)
def _index_map(k: int, a: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomial_basis(k, a).exponents)}


@dataclass(frozen=True)
class PolyVec:
    """A homogeneous form as its coefficient vector over a monomial basis."""

    basis: MonomialBasis
    field: Field
    coeffs: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != len(self.basis):
            raise ValueError("coefficient count does not match basis size")

    @property
    def degree(self) -> int:
        return self.basis.degree

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        f = self.field
        acc = f.zero()
        for c, exp in zip(self.coeffs, self.basis.exponents):
            if c == 0:
                continue
            term = c
            for x, e in zip(point, exp):
                if e:
                    term = f.mul(term, f.power(x, e))
            acc = f.add(acc, term)
        return acc

    def __str__(self) -> str:
        return format_poly(self)


def poly_from_coeffs(field: Field, k: int, a: int, coeffs: Sequence[Scalar]) -> PolyVec:
    return PolyVec(monomial_basis(k, a), field, tuple(coeffs))


def zero_poly(field: Field, k: int, a: int) -> PolyVec:
    basis = monomial_basis(k, a)
    return PolyVec(basis, field, tuple(field.zero() for _ in range(len(basis))))


def linear_form(field: Field, coefficients: Sequence[Scalar]) -> PolyVec:
    """Degree-1 form with the given coefficient on each variable."""
    return poly_from_coeffs(field, len(coefficients), 1, coefficients)


def monomial_str(exponent: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exponent):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: PolyVec) -> str:
    terms = []
    for c, exp in zip(p.coeffs, p.basis.exponents):
        if c == 0:
            continue
        mono = monomial_str(exp)
        if c == 1 and mono != "1":
            terms.append(mono)
        elif mono == "1":
            terms.append(str(c))
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def evaluation_matrix(points: "PointSet", a: int) -> Matrix:
    """The n x N_a matrix evaluating every degree-``a`` monomial at every point.

    Row i holds the monomial values at the normalized representative of point
    i; column order follows ``monomial_basis(k, a)``.
    """
    if a < 1:
        raise ValueError("evaluation degree must be >= 1")
    f = points.field
    basis = monomial_basis(points.k, a)
    rows = []
    for pt in points.points:
        row = []
        for exp in basis.exponents:
            val = f.one()
            for x, e in zip(pt, exp):
                if e:
                    val = f.mul(val, f.power(x, e))
            row.append(val)
        rows.append(tuple(row))
    return Matrix(f, len(rows), len(basis), tuple(rows))


def multiply_by_variable(p: PolyVec, var: int) -> PolyVec:
    """Exact product x_{var+1} * p, expressed one degree up."""
    k = p.basis.k
    if not 0 <= var < k:
        raise ValueError(f"variable index out of range: {var}")
    target = monomial_basis(k, p.degree + 1)
    idx = _index_map(k, p.degree + 1)
    coeffs = [p.field.zero()] * len(target)
    for c, exp in zip(p.coeffs, p.basis.exponents):
        if c == 0:
            continue
        shifted = list(exp)
        shifted[var] += 1
        coeffs[idx[tuple(shifted)]] = c
    return PolyVec(target, p.field, tuple(coeffs))


def _multinomial(total: int, parts: Sequence[int]) -> int:
    out = factorial(total)
    for q in parts:
        out //= factorial(q)
    return out


def eliminate_variable(p: PolyVec, lform: PolyVec, var: int) -> PolyVec:
    """Substitute x_{var+1} := -(1/c)*sum of the other terms of ``lform``.

    ``lform`` must be a degree-1 form with nonzero coefficient on the
    eliminated variable.  The result is a degree-``deg p`` form in the k-1
    remaining variables (original order, the eliminated one removed) and
    agrees with ``p`` modulo the ideal generated by ``lform``.
    """
    if lform.degree != 1 or lform.basis.k != p.basis.k:
        raise ValueError("lform must be a linear form in the same variables")
    k = p.basis.k
    f = p.field
    c_var = lform.coeffs[var]
    if c_var == 0:
        raise BadLinearFormError(f"linear form has zero coefficient on x{var + 1}")
    kept = [i for i in range(k) if i != var]
    # substitution coefficients: x_var = sum_l subs[l] * x_kept[l]
    neg_inv = f.neg(f.inv(c_var))
    subs = [f.mul(neg_inv, lform.coeffs[i]) for i in kept]

    a = p.degree
    target = monomial_basis(k - 1, a)
    idx = _index_map(k - 1, a)
    out = [f.zero()] * len(target)
    for c, exp in zip(p.coeffs, p.basis.exponents):
        if c == 0:
            continue
        base = tuple(exp[i] for i in kept)
        m = exp[var]
        if m == 0:
            out[idx[base]] = f.add(out[idx[base]], c)
            continue
        # expand (sum subs[l] x_l)^m multinomially
        for beta in monomial_basis(k - 1, m).exponents:
            coef = f.from_int(_multinomial(m, beta))
            if coef == 0:
                continue
            for s, b in zip(subs, beta):
                if b:
                    coef = f.mul(coef, f.power(s, b))
            if coef == 0:
                continue
            tgt = tuple(x + y for x, y in zip(base, beta))
            out[idx[tgt]] = f.add(out[idx[tgt]], f.mul(c, coef))
    return PolyVec(target, f, tuple(out))
