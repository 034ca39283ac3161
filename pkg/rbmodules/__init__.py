"""Export rbmodules' public interface."""

try:
    from ._version import version as __version__
except ImportError:  # running from a source tree that was never built
    __version__ = "0.0.0.dev0"

from .catalog import catalog, multi_block_examples, single_block_family, spot_examples
from .exactcore import DenseMatrix, Polynomial, jordan_form, kernel_basis
from .matsolve import (
    classify,
    classify_kx,
    dim_formula,
    oracle_block_kernel,
    oracle_full_kernel,
    solution_space_xkx,
    solve_block,
    verify_equation,
)
from .rbops import (
    Family,
    Flavor,
    ModulePair,
    RBOperator,
    verify_module_axiom,
    verify_rb_identity,
)
from .structure import (
    analyze,
    commutant,
    find_onedim_submodule,
    is_indecomposable,
    is_irreducible,
)

__all__ = [
    "DenseMatrix",
    "Family",
    "Flavor",
    "ModulePair",
    "Polynomial",
    "RBOperator",
    "__version__",
    "analyze",
    "catalog",
    "classify",
    "classify_kx",
    "commutant",
    "dim_formula",
    "find_onedim_submodule",
    "is_indecomposable",
    "is_irreducible",
    "jordan_form",
    "kernel_basis",
    "multi_block_examples",
    "oracle_block_kernel",
    "oracle_full_kernel",
    "single_block_family",
    "solution_space_xkx",
    "solve_block",
    "spot_examples",
    "verify_equation",
    "verify_module_axiom",
    "verify_rb_identity",
]
