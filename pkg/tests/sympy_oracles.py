"""Independent answers computed with sympy, for cross-checking exact results."""

from __future__ import annotations

from fractions import Fraction

import sympy

from rbmodules.exactcore import DenseMatrix, Polynomial
from rbmodules.rbops import ModulePair

X = sympy.Symbol("x")


def to_sympy(m: DenseMatrix) -> sympy.Matrix:
    """The same matrix with sympy rationals."""
    return sympy.Matrix(
        [[sympy.Rational(e.numerator, e.denominator) for e in row] for row in m.to_rows()]
    )


def from_sympy(value: sympy.Rational) -> Fraction:
    """A sympy rational as a Fraction."""
    return Fraction(int(value.p), int(value.q))


def _linear_factor_roots(poly: sympy.Poly) -> list[tuple[Fraction, int]]:
    _, factors = poly.factor_list()
    roots = []
    for factor, mult in factors:
        if factor.degree() == 1:
            c1, c0 = factor.all_coeffs()
            roots.append((from_sympy(-c0 / c1), int(mult)))
    return sorted(roots)


def rational_roots(p: Polynomial) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, read off sympy's factorization over Q."""
    coefficients = [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coefficients)]
    return _linear_factor_roots(sympy.Poly(coefficients, X))


def rational_eigenvalues(m: DenseMatrix) -> list[Fraction]:
    """Distinct rational eigenvalues, ascending."""
    return [value for value, _ in _linear_factor_roots(to_sympy(m).charpoly(X))]


def has_rational_spectrum(m: DenseMatrix) -> bool:
    """Whether every eigenvalue, counted with multiplicity, is rational."""
    return sum(mult for _, mult in _linear_factor_roots(to_sympy(m).charpoly(X))) == m.rows


def common_eigenvector_exists(mp: ModulePair) -> bool:
    """Whether some rational u ≠ 0 has A·u = α·u and B·u = β·u for rational α, β."""
    a, b = to_sympy(mp.a), to_sympy(mp.b)
    n = mp.dim
    for alpha in rational_eigenvalues(mp.a):
        for beta in rational_eigenvalues(mp.b):
            shifted = (a - _rational(alpha) * sympy.eye(n)).col_join(
                b - _rational(beta) * sympy.eye(n)
            )
            if shifted.nullspace():
                return True
    return False


def _rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)
