"""Solution spaces of the module matrix equations for a fixed B.

For the XKx flavor the equation AB = -BAB is solved blockwise in a Jordan
basis of B: block (i, j) of A must satisfy X·J_t(b2) = -J_s(b1)·X·J_t(b2),
i.e. (I + J_s(b1))·X·J_t(b2) = 0, which leaves one of four free-cell
patterns. For the KxP flavors B is diagonalizable to diag(-I_k, 0) and A is
block triangular in that basis.

Every closed form has a brute-force counterpart that vectorizes the equation
and takes an exact kernel.

    >>> solve_block(2, 2, -1, 0).count
    3
    >>> len(oracle_block_kernel(2, 2, -1, 0))
    3
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .exactcore import (
    DenseMatrix,
    JordanDecomposition,
    Scalar,
    Vector,
    jordan_form,
    kernel_basis,
    kron,
    rank_of_vectors,
    same_span,
    unvec,
)
from .rbops import Flavor, ModulePair

LOG = logging.getLogger("rbmodules")

__all__ = [
    "BlockPattern",
    "NotQuasiIdempotent",
    "SolutionSpace",
    "Variant",
    "classify",
    "classify_kx",
    "dim_formula",
    "oracle_block_kernel",
    "oracle_full_kernel",
    "same_span",
    "solution_space_xkx",
    "solve_block",
    "verify_equation",
]


class NotQuasiIdempotent(ValueError):  # noqa: N818
    """B² = -B was required but does not hold."""


class Variant(str, enum.Enum):
    """Which off-diagonal block of A vanishes in the basis where B = diag(-I_k, 0)."""

    I14 = "i14"
    I23 = "i23"


@dataclass(frozen=True)
class BlockPattern:
    """Free cells (1-based) of an s x t block; all other cells are zero."""

    rows: int
    cols: int
    free_cells: frozenset[tuple[int, int]]
    case: str = ""

    @property
    def count(self) -> int:
        """Number of free cells."""
        return len(self.free_cells)

    def sorted_cells(self) -> list[tuple[int, int]]:
        """Free cells in row-major order."""
        return sorted(self.free_cells)

    def vectors(self) -> list[Vector]:
        """Column-stacked elementary matrices, one per free cell."""
        return [
            DenseMatrix.unit(self.rows, self.cols, r - 1, c - 1).vec()
            for r, c in self.sorted_cells()
        ]


def solve_block(s: int, t: int, b1: Scalar, b2: Scalar) -> BlockPattern:
    """Free cells of X in X·J_t(b2) = -J_s(b1)·X·J_t(b2).

    I + J_s(b1) is invertible unless b1 = -1, and then it is the upper shift,
    which kills the first row of X. J_t(b2) is invertible unless b2 = 0, and
    then it is the shift, which kills the last column.

    >>> solve_block(2, 2, -1, 0).sorted_cells()
    [(1, 1), (1, 2), (2, 2)]
    >>> solve_block(3, 2, 5, 7).count
    0
    """
    if s < 1 or t < 1:
        raise ValueError(f"block sizes must be positive, got {s}x{t}")
    first_row = {(1, c) for c in range(1, t + 1)}
    last_col = {(r, t) for r in range(1, s + 1)}
    shift_left, shift_right = Fraction(b1) == -1, Fraction(b2) == 0
    if shift_left and shift_right:
        return BlockPattern(s, t, frozenset(first_row | last_col), "(1)")
    if shift_left:
        return BlockPattern(s, t, frozenset(first_row), "(2)")
    if shift_right:
        return BlockPattern(s, t, frozenset(last_col), "(3)")
    return BlockPattern(s, t, frozenset(), "(4)")


def oracle_block_kernel(s: int, t: int, b1: Scalar, b2: Scalar) -> list[Vector]:
    """Kernel of vec(X) ↦ vec((I + J_s(b1))·X·J_t(b2)), computed by elimination."""
    left = DenseMatrix.identity(s) + DenseMatrix.jordan_block(s, b1)
    right = DenseMatrix.jordan_block(t, b2)
    return kernel_basis(kron(right.transpose(), left))


@dataclass(frozen=True)
class BlockPlacement:
    """The pattern of block (block_row, block_col) of A in the Jordan basis of B."""

    block_row: int
    block_col: int
    pattern: BlockPattern


@dataclass(frozen=True)
class SpaceDescription:
    """How a solution space was built."""

    flavor: Flavor
    blocks: tuple[tuple[Fraction, int], ...]
    change_of_basis: DenseMatrix
    placements: tuple[BlockPlacement, ...] = ()
    variant: Variant | None = None


@dataclass(frozen=True)
class SolutionSpace:
    """A linear space of n x n matrices A, given by an explicit basis."""

    dim_ambient: int
    basis: tuple[DenseMatrix, ...]
    description: SpaceDescription | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        """Dimension of the space."""
        return len(self.basis)

    def vectors(self) -> list[Vector]:
        """The basis, column-stacked."""
        return [m.vec() for m in self.basis]

    def contains(self, a: DenseMatrix) -> bool:
        """Membership by rank."""
        if a.shape != (self.dim_ambient, self.dim_ambient):
            return False
        return rank_of_vectors([*self.vectors(), a.vec()]) == self.dim

    def same_span_as(self, matrices: Sequence[DenseMatrix]) -> bool:
        """Whether the given matrices span exactly this space."""
        return same_span(self.vectors(), [m.vec() for m in matrices])


def _conjugated_units(
    s: DenseMatrix, s_inv: DenseMatrix, cells: Sequence[tuple[int, int]]
) -> tuple[DenseMatrix, ...]:
    n = s.rows
    return tuple(s @ DenseMatrix.unit(n, n, i, j) @ s_inv for i, j in cells)


def solution_space_xkx(b: DenseMatrix) -> SolutionSpace:
    """All A with A·B = -B·A·B.

    With B = S·J·S⁻¹, block (i, j) of X = S⁻¹·A·S follows `solve_block`, and
    each free cell contributes S·E·S⁻¹ to the basis.

    >>> solution_space_xkx(DenseMatrix.diagonal([0, 5])).dim
    2
    """
    jd: JordanDecomposition = jordan_form(b)
    offsets = jd.offsets
    placements = []
    cells: list[tuple[int, int]] = []
    for i, (b1, s) in enumerate(jd.blocks):
        for j, (b2, t) in enumerate(jd.blocks):
            pattern = solve_block(s, t, b1, b2)
            placements.append(BlockPlacement(i + 1, j + 1, pattern))
            cells.extend(
                (offsets[i] + r - 1, offsets[j] + c - 1) for r, c in pattern.sorted_cells()
            )
    basis = _conjugated_units(jd.basis, jd.basis.inverse(), cells) if b.rows else ()
    LOG.debug("XKx solution space for blocks %s has dimension %d", jd.blocks, len(basis))
    return SolutionSpace(
        dim_ambient=b.rows,
        basis=basis,
        description=SpaceDescription(
            flavor=Flavor.XKX,
            blocks=jd.blocks,
            change_of_basis=jd.basis,
            placements=tuple(placements),
        ),
    )


def _require_quasi_idempotent(b: DenseMatrix) -> None:
    if not b.is_square or b @ b != -b:
        raise NotQuasiIdempotent("B² = -B does not hold")


def oracle_full_kernel(b: DenseMatrix, flavor: Flavor) -> list[DenseMatrix]:
    """Kernel of A ↦ (I + B)·A·B, or A ↦ B·A·(I + B) for KxP1/KxP4.

    Needs no eigenvalues, so it works for any B.
    """
    if flavor.quasi_idempotent:
        _require_quasi_idempotent(b)
    n = b.rows
    shifted = DenseMatrix.identity(n) + b
    if flavor.acts_left:
        operator = kron(shifted.transpose(), b)
    else:
        operator = kron(b.transpose(), shifted)
    return [unvec(v, n, n) for v in kernel_basis(operator)]


def classify_kx(b: DenseMatrix, variant: Variant, flavor: Flavor | None = None) -> SolutionSpace:
    """All A for a quasi-idempotent B under the KxP flavors.

    B is diagonalized with the (-1)-eigenspace first. In that basis A has
    A₂ = 0 (variant i14, block lower triangular) or A₃ = 0 (variant i23,
    block upper triangular). Empty blocks are allowed at k = 0 and k = n.
    The space is labelled with `flavor`, by default KxP1 for i14 and KxP2
    for i23.
    """
    _require_quasi_idempotent(b)
    n = b.rows
    regular = kernel_basis(b + DenseMatrix.identity(n))
    singular = kernel_basis(b)
    k = len(regular)
    if n:
        s = DenseMatrix.from_columns([*regular, *singular], n)
        s_inv = s.inverse()
    else:
        s = s_inv = DenseMatrix.zeros(0)
    if variant is Variant.I14:
        cells = [(i, j) for i in range(n) for j in range(n) if not (i < k <= j)]
        flavor = Flavor.KXP1 if flavor is None else flavor
    else:
        cells = [(i, j) for i in range(n) for j in range(n) if not (j < k <= i)]
        flavor = Flavor.KXP2 if flavor is None else flavor
    basis = _conjugated_units(s, s_inv, cells) if n else ()
    LOG.debug("KxP solution space (%s, k=%d, n=%d) has dimension %d", variant.value, k, n, len(basis))
    return SolutionSpace(
        dim_ambient=n,
        basis=basis,
        description=SpaceDescription(
            flavor=flavor,
            blocks=tuple([(Fraction(-1), 1)] * k + [(Fraction(0), 1)] * (n - k)),
            change_of_basis=s,
            variant=variant,
        ),
    )


def classify(b: DenseMatrix, flavor: Flavor) -> SolutionSpace:
    """The solution space of the flavor's equations for this B."""
    if flavor is Flavor.XKX:
        return solution_space_xkx(b)
    return classify_kx(b, Variant.I14 if flavor.acts_left else Variant.I23, flavor)


def verify_equation(mp: ModulePair) -> bool:
    """Check the flavor's matrix conditions exactly.

    >>> a = DenseMatrix.from_rows([[3, 5], [0, 0]])
    >>> verify_equation(ModulePair(a, DenseMatrix.jordan_block(2, -1), Flavor.XKX))
    True
    """
    a, b = mp.a, mp.b
    bab = b @ a @ b
    if mp.flavor.quasi_idempotent and b @ b != -b:
        return False
    if mp.flavor.acts_left:
        return b @ a == -bab
    return a @ b == -bab


def dim_formula(blocks: Sequence[tuple[Scalar, int]]) -> int:
    """Dimension of the XKx solution space from B's Jordan blocks (eigenvalue, size).

    >>> dim_formula([(-1, 1), (0, 1)])
    3
    >>> dim_formula([(5, 2), (7, 1)])
    0
    """
    total = 0
    for bi, pi in blocks:
        for bj, pj in blocks:
            total += solve_block(pi, pj, bi, bj).count
    return total
