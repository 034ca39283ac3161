"""Exact rational linear algebra: dense matrices, polynomials, kernels and Jordan forms.

Every scalar is a `fractions.Fraction`, so every result is bit-exact.

    >>> m = DenseMatrix.from_rows([[1, 2], [2, 4]])
    >>> kernel_basis(m)
    [(Fraction(-2, 1), Fraction(1, 1))]
    >>> char_poly(DenseMatrix.jordan_block(2, -1))
    Polynomial('1 + 2x + x^2')
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

LOG = logging.getLogger("rbmodules")

Rational = Fraction
Vector = tuple[Fraction, ...]
Scalar = Union[int, Fraction]


class NonSquare(ValueError):  # noqa: N818
    """An operation that needs a square matrix was given a rectangular one."""


class DimensionMismatch(ValueError):  # noqa: N818
    """Operands do not conform."""


class IrrationalSpectrum(ArithmeticError):  # noqa: N818
    """Eigenvalues needed for a computation are not all rational.

    The computation would be possible over the algebraic closure, but not
    over the rationals, so it is reported instead of approximated.
    """


class DenseMatrix:
    """Immutable row-major matrix of rationals."""

    __slots__ = ("rows", "cols", "entries")

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]) -> None:
        """Build a `rows` x `cols` matrix from its entries in row-major order."""
        values = tuple(Fraction(e) for e in entries)
        if rows < 0 or cols < 0 or len(values) != rows * cols:
            raise DimensionMismatch(
                f"{len(values)} entries cannot fill a {rows}x{cols} matrix"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", values)

    def __setattr__(self, name: str, value: object) -> None:
        """Refuse mutation."""
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> DenseMatrix:
        """Build a matrix from a list of equally long rows."""
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatch(
                    f"row {i + 1} has {len(row)} entries, expected {width}"
                )
        return cls(len(rows), width, (e for row in rows for e in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int) -> DenseMatrix:
        """Build a matrix whose columns are the given vectors."""
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionMismatch(
                    f"column {j + 1} has {len(col)} entries, expected {rows}"
                )
        return cls(
            rows,
            len(columns),
            (columns[j][i] for i in range(rows) for j in range(len(columns))),
        )

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> DenseMatrix:
        """Zero matrix."""
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> DenseMatrix:
        """Identity matrix I_n."""
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> DenseMatrix:
        """Matrix unit with a single 1 at zero-based position (i, j)."""
        return cls(
            rows,
            cols,
            (1 if (r, c) == (i, j) else 0 for r in range(rows) for c in range(cols)),
        )

    @classmethod
    def jordan_block(cls, size: int, eigenvalue: Scalar) -> DenseMatrix:
        """Jordan block J_size(eigenvalue): eigenvalue on the diagonal, ones above it."""
        value = Fraction(eigenvalue)
        return cls(
            size,
            size,
            (
                value if i == j else (1 if j == i + 1 else 0)
                for i in range(size)
                for j in range(size)
            ),
        )

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> DenseMatrix:
        """Diagonal matrix."""
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence[DenseMatrix]) -> DenseMatrix:
        """Assemble square or rectangular blocks along the diagonal."""
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for block in blocks:
            for i in range(block.rows):
                for j in range(block.cols):
                    grid[r0 + i][c0 + j] = block[i, j]
            r0 += block.rows
            c0 += block.cols
        return cls(rows, cols, (e for row in grid for e in row))

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, cols)."""
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        """Whether rows == cols."""
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        """Entry at zero-based (row, col)."""
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        """Row i as a vector."""
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        """Column j as a vector."""
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        """Rows as mutable lists."""
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        """All columns."""
        return [self.column(j) for j in range(self.cols)]

    def __iter__(self) -> Iterator[Vector]:
        """Iterate over rows."""
        return (self.row(i) for i in range(self.rows))

    def __eq__(self, other: object) -> bool:
        """Exact equality of shape and entries."""
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        """Hash of shape and entries."""
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        """Readable, round-trippable representation."""
        rows = ", ".join(
            "[" + ", ".join(_format(e) for e in row) + "]" for row in self
        )
        return f"DenseMatrix.from_rows([{rows}])"

    def _check_same_shape(self, other: DenseMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} and {other.rows}x{other.cols} do not conform"
            )

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        """Entrywise sum."""
        self._check_same_shape(other)
        return DenseMatrix(
            self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        """Entrywise difference."""
        self._check_same_shape(other)
        return DenseMatrix(
            self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> DenseMatrix:
        """Negation."""
        return DenseMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, factor: Scalar) -> DenseMatrix:
        """Multiply every entry by a scalar."""
        f = Fraction(factor)
        return DenseMatrix(self.rows, self.cols, (f * a for a in self.entries))

    def __rmul__(self, factor: Scalar) -> DenseMatrix:
        """Scalar multiple, written `c * m`."""
        if not isinstance(factor, (int, Fraction)):
            return NotImplemented
        return self.scale(factor)

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        """Matrix product."""
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_cols = other.columns()
        return DenseMatrix(
            self.rows,
            other.cols,
            (
                sum((a * b for a, b in zip(row, col) if a and b), Fraction(0))
                for row in self
                for col in other_cols
            ),
        )

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"cannot apply a {self.rows}x{self.cols} matrix to a vector of length {len(vector)}"
            )
        return tuple(
            sum((a * b for a, b in zip(row, vector) if a and b), Fraction(0))
            for row in self
        )

    def power(self, exponent: int) -> DenseMatrix:
        """Non-negative integer power."""
        if not self.is_square:
            raise NonSquare(f"cannot raise a {self.rows}x{self.cols} matrix to a power")
        if exponent < 0:
            raise ValueError("negative powers are not supported; use inverse()")
        result = DenseMatrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def transpose(self) -> DenseMatrix:
        """Transpose."""
        return DenseMatrix(
            self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def trace(self) -> Fraction:
        """Sum of the diagonal."""
        if not self.is_square:
            raise NonSquare(f"a {self.rows}x{self.cols} matrix has no trace")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        """Whether every entry vanishes."""
        return not any(self.entries)

    def hstack(self, other: DenseMatrix) -> DenseMatrix:
        """Place `other` to the right of this matrix."""
        if self.rows != other.rows:
            raise DimensionMismatch(
                f"cannot stack {self.rows} rows beside {other.rows} rows"
            )
        return DenseMatrix(
            self.rows,
            self.cols + other.cols,
            (e for i in range(self.rows) for e in self.row(i) + other.row(i)),
        )

    def vstack(self, other: DenseMatrix) -> DenseMatrix:
        """Place `other` below this matrix."""
        if self.cols != other.cols:
            raise DimensionMismatch(
                f"cannot stack {self.cols} columns above {other.cols} columns"
            )
        return DenseMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, rows: range, cols: range) -> DenseMatrix:
        """Contiguous block."""
        return DenseMatrix(len(rows), len(cols), (self[i, j] for i in rows for j in cols))

    def rank(self) -> int:
        """Rank over the rationals."""
        return len(rref(self)[1])

    def inverse(self) -> DenseMatrix:
        """Inverse by Gauss-Jordan elimination.

        Raises ZeroDivisionError for singular input.
        """
        if not self.is_square:
            raise NonSquare(f"a {self.rows}x{self.cols} matrix has no inverse")
        n = self.rows
        reduced, pivots = rref(self.hstack(DenseMatrix.identity(n)))
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return reduced.submatrix(range(n), range(n, 2 * n))

    def evaluate(self, poly: Polynomial) -> DenseMatrix:
        """Evaluate a polynomial at this matrix by Horner's rule."""
        if not self.is_square:
            raise NonSquare(f"cannot evaluate a polynomial at a {self.rows}x{self.cols} matrix")
        n = self.rows
        result = DenseMatrix.zeros(n)
        for coeff in reversed(poly.coefficients):
            result = result @ self + DenseMatrix.identity(n).scale(coeff)
        return result

    def vec(self) -> Vector:
        """Column-stacking vectorization."""
        return tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))


def unvec(vector: Sequence[Scalar], rows: int, cols: int) -> DenseMatrix:
    """Invert column-stacking vectorization."""
    if len(vector) != rows * cols:
        raise DimensionMismatch(f"a vector of length {len(vector)} is not a {rows}x{cols} matrix")
    return DenseMatrix(rows, cols, (vector[j * rows + i] for i in range(rows) for j in range(cols)))


def _format(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"Fraction({value.numerator}, {value.denominator})"


def rref(m: DenseMatrix) -> tuple[DenseMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    grid = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        pivot = next((i for i in range(r, m.rows) if grid[i][c]), None)
        if pivot is None:
            continue
        grid[r], grid[pivot] = grid[pivot], grid[r]
        lead = grid[r][c]
        if lead != 1:
            grid[r] = [e / lead for e in grid[r]]
        for i in range(m.rows):
            factor = grid[i][c]
            if i != r and factor:
                grid[i] = [a - factor * b for a, b in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    return DenseMatrix(m.rows, m.cols, (e for row in grid for e in row)), pivots


def kernel_basis(m: DenseMatrix) -> list[Vector]:
    """Basis of the null space, one vector per free column of the echelon form.

    Each vector has a 1 in its free column and zeros in the other free columns.

    >>> kernel_basis(DenseMatrix.identity(3))
    []
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, free]
        basis.append(tuple(v))
    return basis


def rank_of_vectors(vectors: Sequence[Sequence[Scalar]]) -> int:
    """Dimension of the span of the given vectors."""
    if not vectors:
        return 0
    return DenseMatrix.from_rows([list(v) for v in vectors]).rank()


def same_span(
    first: Sequence[Sequence[Scalar]], second: Sequence[Sequence[Scalar]]
) -> bool:
    """Whether two lists of vectors span the same space (mutual containment by rank)."""
    r1 = rank_of_vectors(first)
    r2 = rank_of_vectors(second)
    return r1 == r2 == rank_of_vectors([*first, *second])


def solve(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Solve a·X = b for X when `a` has full column rank.

    Raises ValueError when the system is inconsistent.
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"cannot solve a {a.rows}-row system with a {b.rows}-row right side")
    reduced, pivots = rref(a.hstack(b))
    if pivots[: a.cols] != list(range(a.cols)):
        raise ValueError("coefficient matrix does not have full column rank")
    if any(p >= a.cols for p in pivots):
        raise ValueError("system is inconsistent")
    return reduced.submatrix(range(a.cols), range(a.cols, a.cols + b.cols))


def kron(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Kronecker product; block (i, j) is a[i, j]·b.

    Under column-stacking, vec(a·X·c) = kron(cᵀ, a)·vec(X).
    """
    rows, cols = a.rows * b.rows, a.cols * b.cols
    return DenseMatrix(
        rows,
        cols,
        (
            a[i // b.rows, j // b.cols] * b[i % b.rows, j % b.cols]
            for i in range(rows)
            for j in range(cols)
        ),
    )


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with rational coefficients, index = degree."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[Scalar] = ()) -> None:
        """Trim trailing zeros so the leading coefficient is nonzero."""
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coefficient: Scalar = 1) -> Polynomial:
        """coefficient·x^degree."""
        return cls([0] * degree + [coefficient])

    @classmethod
    def constant(cls, value: Scalar) -> Polynomial:
        """Constant polynomial."""
        return cls([value])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        """Whether this is the zero polynomial."""
        return not self.coefficients

    def coefficient(self, degree: int) -> Fraction:
        """Coefficient of x^degree."""
        return self.coefficients[degree] if 0 <= degree < len(self.coefficients) else Fraction(0)

    def __repr__(self) -> str:
        """Readable representation."""
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        """Ascending-degree rendering such as '1 + 2x + x^2'."""
        if self.is_zero():
            return "0"
        terms = []
        for d, c in enumerate(self.coefficients):
            if not c:
                continue
            if d == 0:
                terms.append(str(c))
                continue
            power = "x" if d == 1 else f"x^{d}"
            coeff = "" if c == 1 else ("-" if c == -1 else str(c))
            terms.append(f"{coeff}{power}")
        return " + ".join(terms)

    def __add__(self, other: Polynomial) -> Polynomial:
        """Sum."""
        n = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(self.coefficient(d) + other.coefficient(d) for d in range(n))

    def __sub__(self, other: Polynomial) -> Polynomial:
        """Difference."""
        return self + other.scale(-1)

    def __neg__(self) -> Polynomial:
        """Negation."""
        return self.scale(-1)

    def scale(self, factor: Scalar) -> Polynomial:
        """Scalar multiple."""
        f = Fraction(factor)
        return Polynomial(f * c for c in self.coefficients)

    def __mul__(self, other: Polynomial) -> Polynomial:
        """Product."""
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return Polynomial(out)

    def __divmod__(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        """Euclidean division."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        quotient = [Fraction(0)] * max(len(remainder) - divisor.degree, 0)
        lead = divisor.leading
        for shift in range(len(quotient) - 1, -1, -1):
            factor = remainder[shift + divisor.degree] / lead
            quotient[shift] = factor
            if factor:
                for d, c in enumerate(divisor.coefficients):
                    remainder[shift + d] -= factor * c
        return Polynomial(quotient), Polynomial(remainder[: divisor.degree] if divisor.degree else ())

    def __call__(self, value: Scalar) -> Fraction:
        """Evaluate at a rational point."""
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * value + c
        return result

    def monic(self) -> Polynomial:
        """Divide by the leading coefficient."""
        return self.scale(1 / self.leading) if self.coefficients else self

    def primitive_integer_coefficients(self) -> list[int]:
        """Integer multiple of this polynomial with coprime coefficients."""
        common = math.lcm(*(c.denominator for c in self.coefficients))
        ints = [int(c * common) for c in self.coefficients]
        content = math.gcd(*ints)
        return [i // content for i in ints]


def gcdex(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Extended Euclid: (s, t, g) with s·a + t·b = g = monic gcd(a, b)."""
    r0, r1 = a, b
    s0, s1 = Polynomial([1]), Polynomial()
    t0, t1 = Polynomial(), Polynomial([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.leading
    if not lead:
        return s0, t0, r0
    return s0.scale(1 / lead), t0.scale(1 / lead), r0.scale(1 / lead)


def char_poly(m: DenseMatrix) -> Polynomial:
    """Characteristic polynomial det(xI - m) by the Faddeev-LeVerrier recursion.

    >>> char_poly(DenseMatrix.zeros(3))
    Polynomial('x^3')
    >>> char_poly(DenseMatrix.from_rows([[0, 1], [-1, 0]]))
    Polynomial('1 + x^2')
    """
    if not m.is_square:
        raise NonSquare(f"a {m.rows}x{m.cols} matrix has no characteristic polynomial")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    identity = DenseMatrix.identity(n)
    aux = DenseMatrix.zeros(n)
    for k in range(1, n + 1):
        aux = m @ aux + identity.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ aux).trace() / k
    return Polynomial(coeffs)


def _derivative(p: Polynomial) -> Polynomial:
    return Polynomial(d * c for d, c in enumerate(p.coefficients) if d)


def _sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p, _derivative(p)]
    while not chain[-1].is_zero():
        _, r = divmod(chain[-2], chain[-1])
        chain.append(-r)
    return chain[:-1]


def _sign_changes(chain: Sequence[Polynomial], x: Fraction) -> int:
    signs = [v > 0 for v in (q(x) for q in chain) if v]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def rational_roots(p: Polynomial) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, ascending.

    The real roots of the square-free part are isolated with a Sturm chain
    inside the Cauchy bound. A rational root r of a primitive integer
    polynomial with leading coefficient c makes c·r an integer, so once an
    interval is narrower than 1/|c| it holds at most one candidate, which is
    tested exactly.

    >>> rational_roots(Polynomial([0, -1, 0, 1]))
    [(Fraction(-1, 1), 1), (Fraction(0, 1), 1), (Fraction(1, 1), 1)]
    >>> rational_roots(Polynomial([1, 0, 1]))
    []
    >>> rational_roots(Polynomial([-(10**18 + 9), 1]))
    [(Fraction(1000000000000000009, 1), 1)]
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    if p.degree < 1:
        return []
    square_free, _ = divmod(p, gcdex(p, _derivative(p))[2])
    ints = square_free.primitive_integer_coefficients()
    lead = abs(ints[-1])
    bound = Fraction(1 + max(abs(c) for c in ints[:-1]), lead) + 1
    chain = _sturm_chain(Polynomial(ints))

    found: list[Fraction] = []
    pending = [(-bound, bound, _sign_changes(chain, -bound), _sign_changes(chain, bound))]
    while pending:
        lo, hi, v_lo, v_hi = pending.pop()
        if v_lo == v_hi:
            continue
        if (hi - lo) * lead < 1:
            # roots in (lo, hi]
            k = math.floor(hi * lead)
            if Fraction(k, lead) > lo and not square_free(Fraction(k, lead)):
                found.append(Fraction(k, lead))
            continue
        mid = (lo + hi) / 2
        v_mid = _sign_changes(chain, mid)
        pending.append((lo, mid, v_lo, v_mid))
        pending.append((mid, hi, v_mid, v_hi))

    roots = []
    for root in sorted(found):
        mult = 0
        factor = Polynomial([-root, 1])
        while p.degree > 0 and not p(root):
            p, _ = divmod(p, factor)
            mult += 1
        roots.append((root, mult))
    return roots


@dataclass(frozen=True)
class JordanDecomposition:
    """m = basis · J · basis⁻¹ with J the block-diagonal assembly of `blocks`."""

    basis: DenseMatrix
    blocks: tuple[tuple[Fraction, int], ...]

    @property
    def canonical(self) -> DenseMatrix:
        """The Jordan matrix J."""
        return DenseMatrix.block_diagonal(
            [DenseMatrix.jordan_block(size, value) for value, size in self.blocks]
        )

    @property
    def offsets(self) -> list[int]:
        """Starting row of each block inside J."""
        starts, acc = [], 0
        for _, size in self.blocks:
            starts.append(acc)
            acc += size
        return starts

    def reassemble(self) -> DenseMatrix:
        """basis · J · basis⁻¹."""
        return self.basis @ self.canonical @ self.basis.inverse()


def jordan_form(m: DenseMatrix) -> JordanDecomposition:
    """Jordan canonical form over the rationals with its transition matrix.

    Blocks come sorted by eigenvalue ascending, then size descending. Block
    sizes follow from the ranks of (m - μI)^k; chains are built top-down so
    that columns μ-chain s_1..s_k satisfy (m - μI)s_j = s_{j-1}.

    >>> jordan_form(DenseMatrix.diagonal([5, 0])).blocks
    ((Fraction(0, 1), 1), (Fraction(5, 1), 1))
    """
    if not m.is_square:
        raise NonSquare(f"a {m.rows}x{m.cols} matrix has no Jordan form")
    n = m.rows
    roots = rational_roots(char_poly(m)) if n else []
    if sum(mult for _, mult in roots) != n:
        raise IrrationalSpectrum(
            "characteristic polynomial has fewer rational roots than the dimension"
        )
    columns: list[Vector] = []
    blocks: list[tuple[Fraction, int]] = []
    identity = DenseMatrix.identity(n)
    for value, mult in roots:
        shifted = m - identity.scale(value)
        kernels: list[list[Vector]] = [[]]
        power = identity
        while len(kernels[-1]) < mult:
            power = power @ shifted
            kernels.append(kernel_basis(power))
        depth = len(kernels) - 1
        # level k holds vectors of height k already committed to a chain
        level: list[Vector] = []
        tops: list[tuple[Vector, int]] = []
        for k in range(depth, 0, -1):
            committed = kernels[k - 1] + level
            current = rank_of_vectors(committed)
            for candidate in kernels[k]:
                trial = rank_of_vectors([*committed, candidate])
                if trial > current:
                    committed = [*committed, candidate]
                    current = trial
                    tops.append((candidate, k))
                    level.append(candidate)
            level = [shifted.apply(v) for v in level]
        tops.sort(key=lambda top: -top[1])
        for top, size in tops:
            chain = [top]
            for _ in range(size - 1):
                chain.append(shifted.apply(chain[-1]))
            columns.extend(reversed(chain))
            blocks.append((value, size))
    LOG.debug("Jordan blocks of %dx%d matrix: %s", n, n, blocks)
    return JordanDecomposition(
        basis=DenseMatrix.from_columns(columns, n) if n else DenseMatrix.zeros(0),
        blocks=tuple(blocks),
    )
