"""Catalog tests: every listed family is a module family of the stated size."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbmodules.catalog import (
    CatalogEntry,
    InvalidCaseParams,
    SingleBlockCase,
    UnsupportedDimension,
    catalog,
    multi_block_examples,
    paired_block_family,
    single_block_family,
    spot_examples,
)
from rbmodules.exactcore import DenseMatrix
from rbmodules.jobs import FAMILY_OF_FLAVOR
from rbmodules.matsolve import classify, oracle_full_kernel, verify_equation
from rbmodules.rbops import (
    Family,
    Flavor,
    ModulePair,
    RBOperator,
    derived_identities_hold,
    verify_module_axiom,
)

from .strategies import rationals


def _entries() -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    for n in (1, 2, 3):
        entries += catalog(n, Flavor.XKX)
    for flavor in (Flavor.KXP1, Flavor.KXP2, Flavor.KXP3, Flavor.KXP4):
        for n in (1, 2, 3, 4):
            entries += catalog(n, flavor)
    return entries + spot_examples()


def test_representatives_are_modules() -> None:
    """Test that each representative satisfies its equations and the module axiom."""
    for entry in _entries():
        mp = entry.module
        family = FAMILY_OF_FLAVOR[mp.flavor]
        op = RBOperator(family, 1, 1 if family is Family.P1 else None, truncation=6)

        assert verify_equation(mp), entry.label
        assert verify_module_axiom(op, mp).holds, entry.label


def test_parameter_counts_match_solution_spaces() -> None:
    """Test that each family's parameter count is the dimension of the A-space for its B."""
    for entry in _entries():
        space = classify(entry.module.b, entry.module.flavor)

        assert space.dim == entry.free_parameters, entry.label
        assert space.contains(entry.module.a), entry.label
        assert len(oracle_full_kernel(entry.module.b, entry.module.flavor)) == entry.free_parameters


def test_low_dimensional_counts() -> None:
    """Test the parameter counts of the one-, two- and three-dimensional lists."""
    assert [e.free_parameters for e in catalog(1, Flavor.XKX)] == [1, 1, 0]
    assert [e.free_parameters for e in catalog(2, Flavor.XKX)] == [4, 4, 0, 2, 3, 2, 2, 2]
    assert {e.label: e.free_parameters for e in catalog(3, Flavor.XKX)} == {
        "(1)": 6,
        "(2a)": 3,
        "(2b)": 3,
        "(2c)": 3,
        "(3)": 3,
        "(4)": 3,
        "(5)": 0,
        "(6a)": 5,
        "(6b)": 5,
        "(6c)": 5,
        "(7a)": 3,
        "(7b)": 3,
    }


def test_spot_example_counts() -> None:
    """Test the larger examples in dimensions 4, 5 and 6."""
    counts = {e.label: e.free_parameters for e in spot_examples()}

    assert counts["n=4"] == 7
    assert counts["n=5"] == 9
    assert counts["n=6"] == 11


def test_kx_counts_by_rank() -> None:
    """Test k² + (n - k)² + k(n - k) parameters for every rank of the regular part."""
    for flavor in (Flavor.KXP1, Flavor.KXP3):
        entries = catalog(4, flavor)

        assert [e.label for e in entries] == ["k=0", "k=1", "k=2", "k=3", "k=4"]
        assert [e.free_parameters for e in entries] == [16, 13, 12, 13, 16]


def test_paired_block_families() -> None:
    """Test 2k² parameters for k repeated 2x2 Jordan blocks at -1 and at 0."""
    for k in (1, 2, 3):
        for b in (-1, 0):
            entry = paired_block_family(k, b)

            assert entry.free_parameters == 2 * k * k
            assert classify(entry.module.b, Flavor.XKX).dim == 2 * k * k

    with pytest.raises(InvalidCaseParams):
        paired_block_family(2, 5)
    with pytest.raises(InvalidCaseParams):
        paired_block_family(0, -1)


def test_upper_triangular_form_with_second_eigenvalue_is_not_a_module() -> None:
    """Test that a nonzero bottom-right entry breaks B = diag(-1, b2) with b2 outside {-1, 0}."""
    b = DenseMatrix.diagonal([-1, 2])

    assert not verify_equation(ModulePair(DenseMatrix.from_rows([[1, 2], [0, 4]]), b, Flavor.XKX))
    assert verify_equation(ModulePair(DenseMatrix.from_rows([[1, 2], [0, 0]]), b, Flavor.XKX))


def test_single_block_family() -> None:
    """Test the three single-block families and their parameter checks."""
    row = single_block_family(3, SingleBlockCase.ROW, (1, 2, 3), b=-1)
    column = single_block_family(3, SingleBlockCase.COLUMN, (4, 5, 6), b=0)
    zero = single_block_family(3, SingleBlockCase.ZERO, b=7)

    assert row.a.row(0) == (1, 2, 3)
    assert column.a.column(2) == (4, 5, 6)
    assert zero.a.is_zero()
    for mp in (row, column, zero):
        assert verify_equation(mp)

    with pytest.raises(InvalidCaseParams):
        single_block_family(3, SingleBlockCase.ROW, (1, 2, 3), b=0)
    with pytest.raises(InvalidCaseParams):
        single_block_family(3, SingleBlockCase.COLUMN, (1, 2), b=0)
    with pytest.raises(InvalidCaseParams):
        single_block_family(2, SingleBlockCase.ZERO, b=-1)
    with pytest.raises(InvalidCaseParams):
        single_block_family(2, SingleBlockCase.ZERO, (1,), b=2)
    with pytest.raises(InvalidCaseParams):
        single_block_family(0, SingleBlockCase.ZERO, b=2)


def test_multi_block_examples_are_modules() -> None:
    """Test that the multi-block indecomposable examples are XKx modules."""
    for mp in multi_block_examples().values():
        assert verify_equation(mp)


def test_unsupported_dimensions() -> None:
    """Test that catalogs outside their range are refused."""
    with pytest.raises(UnsupportedDimension):
        catalog(4, Flavor.XKX)
    with pytest.raises(UnsupportedDimension):
        catalog(0, Flavor.KXP2)


@settings(max_examples=50)
@given(
    st.integers(1, 8).flatmap(
        lambda n: st.tuples(
            st.lists(rationals(9, 4), min_size=n, max_size=n),
            rationals(4, 4).filter(lambda b: b not in (-1, 0)),
        )
    )
)
def test_single_block_families_with_random_parameters(
    sample: tuple[list[Fraction], Fraction],
) -> None:
    """Test the single-block families up to dimension 8 with rational parameters."""
    params, b = sample
    n = len(params)
    for mp in (
        single_block_family(n, SingleBlockCase.ROW, params, b=-1),
        single_block_family(n, SingleBlockCase.COLUMN, params, b=0),
        single_block_family(n, SingleBlockCase.ZERO, b=b),
    ):
        assert verify_equation(mp)


def test_derived_identities_across_the_catalog() -> None:
    """Test the power identities up to x^12 and (-y)^4 for every listed module."""
    modules = [entry.module for entry in _entries()]
    modules += multi_block_examples().values()
    modules += [paired_block_family(k, b).module for k in (1, 2) for b in (-1, 0)]
    for n in range(1, 6):
        params = range(1, n + 1)
        modules += [
            single_block_family(n, SingleBlockCase.ROW, params, b=-1),
            single_block_family(n, SingleBlockCase.COLUMN, params, b=0),
            single_block_family(n, SingleBlockCase.ZERO, b=Fraction(5, 2)),
        ]
    for mp in modules:
        assert derived_identities_hold(mp, truncation=12, powers=4), mp
