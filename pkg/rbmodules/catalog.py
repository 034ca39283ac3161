"""Known families of module pairs.

Each `CatalogEntry` carries one representative pair, built by putting the
values 1, 2, 3, ... into the family's free cells of A in row-major order,
and the number of free parameters of the family's A-space.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .exactcore import DenseMatrix, Scalar
from .rbops import Flavor, ModulePair


class InvalidCaseParams(ValueError):  # noqa: N818
    """Parameters do not fit the requested family case."""


class UnsupportedDimension(ValueError):  # noqa: N818
    """No catalog exists for the requested dimension and flavor."""


class SingleBlockCase(str, enum.Enum):
    """The three single-Jordan-block families of XKx modules."""

    ROW = "RowCase"
    COLUMN = "ColumnCase"
    ZERO = "ZeroCase"


@dataclass(frozen=True)
class CatalogEntry:
    """One family: a label, a readable description, a representative, its parameter count."""

    label: str
    description: str
    module: ModulePair
    free_parameters: int


def single_block_family(
    n: int, case: SingleBlockCase, params: Sequence[Scalar] = (), b: Scalar = 0
) -> ModulePair:
    """The XKx module on which B is the single Jordan block J_n(b).

    RowCase (b = -1): row 1 of A is `params`. ColumnCase (b = 0): column n
    of A is `params`. ZeroCase (b ∉ {-1, 0}): A = 0.

    >>> mp = single_block_family(2, SingleBlockCase.ROW, (3, 5), b=-1)
    >>> mp.a.to_rows()
    [[Fraction(3, 1), Fraction(5, 1)], [Fraction(0, 1), Fraction(0, 1)]]
    """
    if n < 1:
        raise InvalidCaseParams(f"dimension must be positive, got {n}")
    b = Fraction(b)
    expected = {SingleBlockCase.ROW: -1, SingleBlockCase.COLUMN: 0}
    if case in expected:
        if b != expected[case]:
            raise InvalidCaseParams(f"{case.value} needs b = {expected[case]}, got {b}")
        if len(params) != n:
            raise InvalidCaseParams(f"{case.value} needs {n} parameters, got {len(params)}")
    elif b in (-1, 0):
        raise InvalidCaseParams(f"ZeroCase needs b outside {{-1, 0}}, got {b}")
    elif params:
        raise InvalidCaseParams("ZeroCase takes no parameters")
    if case is SingleBlockCase.ROW:
        a = DenseMatrix(n, n, [*params, *([0] * (n * n - n))])
    elif case is SingleBlockCase.COLUMN:
        a = DenseMatrix.from_columns([[0] * n] * (n - 1) + [list(params)], n)
    else:
        a = DenseMatrix.zeros(n)
    return ModulePair(a, DenseMatrix.jordan_block(n, b), Flavor.XKX)


def _filled(n: int, cells: Sequence[tuple[int, int]]) -> DenseMatrix:
    """A with the values 1, 2, ... in the given 0-based cells, zero elsewhere."""
    grid = [[0] * n for _ in range(n)]
    for value, (i, j) in enumerate(sorted(cells), start=1):
        grid[i][j] = value
    return DenseMatrix.from_rows(grid)


def _all_cells(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n)]


def _rows(n: int, *rows: int) -> list[tuple[int, int]]:
    return [(i, j) for i in rows for j in range(n)]


def _cols(n: int, *cols: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in cols]


def _entry(
    label: str,
    description: str,
    b: DenseMatrix,
    cells: Sequence[tuple[int, int]],
    flavor: Flavor = Flavor.XKX,
) -> CatalogEntry:
    cells = sorted(set(cells))
    return CatalogEntry(label, description, ModulePair(_filled(b.rows, cells), b, flavor), len(cells))


def _blocks(*parts: DenseMatrix) -> DenseMatrix:
    return DenseMatrix.block_diagonal(list(parts))


_J = DenseMatrix.jordan_block
_D = DenseMatrix.diagonal


def _xkx_catalog(n: int) -> list[CatalogEntry]:
    if n == 1:
        return [
            _entry("(i)", "any A, B = 0", _D([0]), _all_cells(1)),
            _entry("(ii)", "any A, B = -1", _D([-1]), _all_cells(1)),
            _entry("(iii)", "A = 0, any B (sample B = 2)", _D([2]), []),
        ]
    if n == 2:
        return [
            _entry("(i)", "any A, B = 0", _D([0, 0]), _all_cells(2)),
            _entry("(ii)", "any A, B = -I", _D([-1, -1]), _all_cells(2)),
            _entry("(iii)", "A = 0, any B (sample B = [[2, 1], [0, 3]])",
                   DenseMatrix.from_rows([[2, 1], [0, 3]]), []),
            _entry("(iv)", "A = [[a1, 0], [a3, 0]], B = diag(0, b2), b2 ∉ {-1, 0}",
                   _D([0, 3]), _cols(2, 0)),
            _entry("(v)", "A = [[a1, a2], [0, a4]], B = diag(-1, 0)",
                   _D([-1, 0]), [(0, 0), (0, 1), (1, 1)]),
            _entry("(vi)", "A = [[a1, a2], [0, 0]], B = diag(-1, b2), b2 ∉ {-1, 0}",
                   _D([-1, 2]), _rows(2, 0)),
            _entry("(vii)", "A = [[0, a2], [0, a4]], B = J2(0)", _J(2, 0), _cols(2, 1)),
            _entry("(viii)", "A = [[a1, a2], [0, 0]], B = J2(-1)", _J(2, -1), _rows(2, 0)),
        ]
    if n == 3:
        first_row = _rows(3, 0)
        return [
            _entry("(1)", "rows 1-2 free, B = diag(-1, -1, b3)", _D([-1, -1, 2]), _rows(3, 0, 1)),
            _entry("(2a)", "row 1 free, B = J2(-1) ⊕ (b3)", _blocks(_J(2, -1), _D([2])), first_row),
            _entry("(2b)", "row 1 free, B = diag(-1, b2, b3)", _D([-1, 2, 3]), first_row),
            _entry("(2c)", "row 1 free, B = J3(-1)", _J(3, -1), first_row),
            _entry("(3)", "column 1 free, B = diag(0, b2, b3)", _D([0, 2, 3]), _cols(3, 0)),
            _entry("(4)", "column 2 free, B = J2(0) ⊕ (b3)", _blocks(_J(2, 0), _D([2])), _cols(3, 1)),
            _entry("(5)", "A = 0, B upper triangular with diagonal outside {-1, 0}",
                   DenseMatrix.from_rows([[2, 1, 0], [0, 2, 0], [0, 0, 3]]), []),
            _entry("(6a)", "row 1 and column 3 free, B = J2(-1) ⊕ (0)",
                   _blocks(_J(2, -1), _D([0])), first_row + _cols(3, 2)),
            _entry("(6b)", "row 1 and column 3 free, B = (-1) ⊕ J2(0)",
                   _blocks(_D([-1]), _J(2, 0)), first_row + _cols(3, 2)),
            _entry("(6c)", "row 1 and column 3 free, B = diag(-1, b2, 0)",
                   _D([-1, 2, 0]), first_row + _cols(3, 2)),
            _entry("(7a)", "column 3 free, B = [[b1, -1, 0], [0, b1, 0], [0, 0, 0]]",
                   DenseMatrix.from_rows([[2, -1, 0], [0, 2, 0], [0, 0, 0]]), _cols(3, 2)),
            _entry("(7b)", "column 3 free, B = J3(0)", _J(3, 0), _cols(3, 2)),
        ]
    raise UnsupportedDimension(f"the XKx catalog covers n = 1, 2, 3, not {n}")


def _kx_catalog(n: int, flavor: Flavor) -> list[CatalogEntry]:
    entries = []
    for k in range(n + 1):
        b = _D([-1] * k + [0] * (n - k))
        if flavor.acts_left:
            cells = [(i, j) for i, j in _all_cells(n) if not (i < k <= j)]
            shape = "A₂ = 0"
        else:
            cells = [(i, j) for i, j in _all_cells(n) if not (j < k <= i)]
            shape = "A₃ = 0"
        entries.append(_entry(f"k={k}", f"B = diag(-I_{k}, 0_{n - k}), {shape}", b, cells, flavor))
    return entries


def catalog(n: int, flavor: Flavor) -> list[CatalogEntry]:
    """Known families of n-dimensional modules of the given flavor.

    XKx lists the known families for n = 1, 2, 3; this is a verification
    corpus rather than a partition. The KxP flavors give the normal form
    for each rank k = 0..n of the regular part.

    >>> [entry.free_parameters for entry in catalog(1, Flavor.XKX)]
    [1, 1, 0]
    """
    if n < 1:
        raise UnsupportedDimension(f"dimension must be positive, got {n}")
    if flavor is Flavor.XKX:
        return _xkx_catalog(n)
    return _kx_catalog(n, flavor)


def paired_block_family(k: int, b: Scalar) -> CatalogEntry:
    """B = J2(b) repeated k times, for b = -1 (row 1 of each block free) or b = 0 (column 2)."""
    b = Fraction(b)
    if k < 1:
        raise InvalidCaseParams(f"need at least one block, got {k}")
    n = 2 * k
    if b == -1:
        cells = _rows(n, *range(0, n, 2))
        where = "first row"
    elif b == 0:
        cells = _cols(n, *range(1, n, 2))
        where = "last column"
    else:
        raise InvalidCaseParams(f"paired blocks need b in {{-1, 0}}, got {b}")
    return _entry(
        f"J2({b})^{k}",
        f"B = J2({b}) repeated {k} times, {where} of every 2x2 block of A free",
        _blocks(*([_J(2, b)] * k)),
        cells,
    )


def spot_examples() -> list[CatalogEntry]:
    """Larger XKx examples in dimensions 4, 5 and 6, plus two paired-block families."""
    return [
        _entry("n=4", "B = J2(0) ⊕ J2(-1)", _blocks(_J(2, 0), _J(2, -1)),
               _cols(4, 1) + _rows(4, 2)),
        _entry("n=5", "B = J2(-1) ⊕ (0) ⊕ J2(2)", _blocks(_J(2, -1), _D([0]), _J(2, 2)),
               _rows(5, 0) + _cols(5, 2)),
        _entry("n=6", "B = J2(0) ⊕ J2(3) ⊕ J2(-1)", _blocks(_J(2, 0), _J(2, 3), _J(2, -1)),
               _cols(6, 1) + _rows(6, 4)),
        paired_block_family(2, -1),
        paired_block_family(2, 0),
    ]


def multi_block_examples() -> dict[str, ModulePair]:
    """Indecomposable XKx modules on which B has more than one Jordan block."""
    e23 = DenseMatrix.unit(3, 3, 1, 2)
    return {
        "two-dimensional": ModulePair(
            DenseMatrix.from_rows([[2, 1], [0, 2]]), _D([-1, 0]), Flavor.XKX
        ),
        "three-dimensional": ModulePair(e23, _blocks(_J(2, -1), _D([0])), Flavor.XKX),
    }
