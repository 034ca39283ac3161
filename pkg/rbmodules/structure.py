"""Submodules, irreducibility and indecomposability of module pairs.

A submodule of (A, B) is a subspace invariant under both matrices. Every
nonzero module has a one-dimensional submodule, found constructively from
eigenspaces of B; whether a module splits is decided from its commutant
(the endomorphism algebra) and that algebra's radical.
"""

from __future__ import annotations

import enum
import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .exactcore import (
    DenseMatrix,
    IrrationalSpectrum,
    Polynomial,
    Scalar,
    Vector,
    char_poly,
    gcdex,
    kernel_basis,
    kron,
    rational_roots,
    solve,
    unvec,
)
from .matsolve import NotQuasiIdempotent, verify_equation
from .rbops import Flavor, FlavorMismatch, ModulePair

LOG = logging.getLogger("rbmodules")


class NotAModule(ValueError):  # noqa: N818
    """The pair does not satisfy its flavor's module equations."""


@dataclass(frozen=True)
class SubmoduleWitness:
    """A vector u spanning a one-dimensional submodule: A·u = x_eigen·u, B·u = p_eigen·u."""

    generator: Vector
    x_eigen: Fraction
    p_eigen: Fraction

    def holds_for(self, mp: ModulePair) -> bool:
        """Check the eigen-equations exactly."""
        u = self.generator
        return (
            any(u)
            and mp.a.apply(u) == tuple(self.x_eigen * e for e in u)
            and mp.b.apply(u) == tuple(self.p_eigen * e for e in u)
        )


class Verdict(str, enum.Enum):
    """Outcome of the indecomposability test."""

    INDECOMPOSABLE = "Indecomposable"
    DECOMPOSABLE = "Decomposable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class EndAlgebraReport:
    """Commutant of a module pair and what it says about splitting."""

    commutant_basis: tuple[DenseMatrix, ...]
    radical_dim: int
    semisimple_quotient_dim: int
    verdict: Verdict
    splitting_idempotent: DenseMatrix | None = None


@dataclass(frozen=True)
class IrreducibilityReport:
    """`irreducible` is true exactly in dimension one.

    For larger modules `witness` certifies a proper submodule, or `note`
    says why no rational witness could be produced.
    """

    irreducible: bool
    witness: SubmoduleWitness | None = None
    note: str | None = None


def eigenspace(m: DenseMatrix, alpha: Scalar) -> list[Vector]:
    """Basis of {v : m·v = alpha·v}.

    >>> eigenspace(DenseMatrix.jordan_block(2, -1), -1)
    [(Fraction(1, 1), Fraction(0, 1))]
    """
    return kernel_basis(m - DenseMatrix.identity(m.rows).scale(alpha))


def _restricted_eigenvector(m: DenseMatrix, subspace: Sequence[Vector]) -> tuple[Vector, Fraction]:
    """A rational eigenvector of m restricted to an m-invariant subspace."""
    v = DenseMatrix.from_columns(subspace, m.rows)
    restricted = solve(v, m @ v)
    roots = rational_roots(char_poly(restricted))
    if not roots:
        raise IrrationalSpectrum(
            f"the restriction to a {len(subspace)}-dimensional invariant subspace has no rational eigenvalue"
        )
    value = roots[0][0]
    w = eigenspace(restricted, value)[0]
    return v.apply(w), value


def largest_invariant_subspace(m: DenseMatrix, subspace: Sequence[Vector]) -> list[Vector]:
    """Basis of the largest m-invariant subspace contained in span(subspace).

    Repeatedly keeps {v : m·v ∈ W} until nothing more is dropped.

    >>> largest_invariant_subspace(DenseMatrix.from_rows([[0, 1], [0, 0]]), [(0, 1)])
    []
    """
    basis = list(subspace)
    while basis:
        v = DenseMatrix.from_columns(basis, m.rows)
        annihilator = kernel_basis(v.transpose())
        if not annihilator:
            return basis
        constraint = DenseMatrix.from_rows(annihilator) @ m @ v
        keep = kernel_basis(constraint)
        if len(keep) == len(basis):
            return basis
        basis = [v.apply(c) for c in keep]
    return basis


def _witness_in(
    a: DenseMatrix, space: Sequence[Vector], p_eigen: Fraction
) -> SubmoduleWitness | None:
    invariant = largest_invariant_subspace(a, space)
    if not invariant:
        return None
    try:
        u, value = _restricted_eigenvector(a, invariant)
    except IrrationalSpectrum:
        return None
    return SubmoduleWitness(u, value, p_eigen)


def find_onedim_submodule(mp: ModulePair) -> SubmoduleWitness:
    """Construct a one-dimensional submodule.

    Any such submodule lies in an eigenspace M_β(B) and inside the largest
    A-invariant subspace W of it, where it is an eigenvector of A. So every
    rational β is tried, and A is restricted to W. The order follows the
    constructive proof for AB = -BAB (flavors XKx, KxP2, KxP3):

    1. β = -1: M₋₁(B) is A-invariant.
    2. Otherwise I + B is invertible and AB = 0:
       a. β ∉ {-1, 0}, ascending: A kills M_β(B) ⊆ im B.
       b. β = 0: covers B = 0 (any eigenvector of A) and nilpotent B, where
          ker B ∩ im B is killed by both matrices.

    For BA = -BAB (KxP1, KxP4) the kernel M₀(B) is A-invariant and comes
    first; when it is zero, B = -I and any eigenvector of A will do.

    IrrationalSpectrum means no rational one-dimensional submodule exists.

    >>> a = DenseMatrix.from_rows([[2, 1], [0, 2]])
    >>> w = find_onedim_submodule(ModulePair(a, DenseMatrix.diagonal([-1, 0]), Flavor.XKX))
    >>> w.generator, w.x_eigen, w.p_eigen
    ((Fraction(1, 1), Fraction(0, 1)), Fraction(2, 1), Fraction(-1, 1))
    """
    if not verify_equation(mp):
        raise NotAModule(f"the pair does not satisfy the {mp.flavor.value} equations")
    a, b = mp.a, mp.b
    values = [value for value, _ in rational_roots(char_poly(b))]
    first = [Fraction(0), Fraction(-1)] if mp.flavor.acts_left else [Fraction(-1)]
    order = [v for v in first if v in values]
    order += [v for v in values if v not in (-1, 0)]
    order += [v for v in (Fraction(-1), Fraction(0)) if v in values and v not in order]
    for beta in order:
        witness = _witness_in(a, eigenspace(b, beta), beta)
        if witness is not None:
            LOG.debug("one-dimensional submodule in the %s-eigenspace of B", beta)
            return witness
    raise IrrationalSpectrum("no rational vector is an eigenvector of both A and B")


def is_irreducible(mp: ModulePair) -> IrreducibilityReport:
    """True exactly for one-dimensional modules; larger ones carry a witness."""
    if not verify_equation(mp):
        raise NotAModule(f"the pair does not satisfy the {mp.flavor.value} equations")
    if mp.dim == 1:
        return IrreducibilityReport(True)
    try:
        return IrreducibilityReport(False, witness=find_onedim_submodule(mp))
    except IrrationalSpectrum as exc:
        return IrreducibilityReport(False, note=str(exc))


def regular_singular_decomposition(
    b: DenseMatrix, weight: Scalar = 1
) -> tuple[DenseMatrix, DenseMatrix]:
    """Projectors (-B/λ, I + B/λ) onto M₋λ and M₀ for B² + λB = 0.

    >>> e, f = regular_singular_decomposition(DenseMatrix.diagonal([-1, 0]))
    >>> e == DenseMatrix.diagonal([1, 0]), f == DenseMatrix.diagonal([0, 1])
    (True, True)
    """
    lam = Fraction(weight)
    if not lam:
        raise ValueError("weight must be nonzero")
    if not b.is_square or b @ b + b.scale(lam) != DenseMatrix.zeros(b.rows):
        raise NotQuasiIdempotent(f"B² + {lam}·B is not zero")
    regular = b.scale(-1 / lam)
    return regular, DenseMatrix.identity(b.rows) - regular


def commutant(mp: ModulePair) -> list[DenseMatrix]:
    """Basis of {C : CA = AC, CB = BC}."""
    n = mp.dim
    identity = DenseMatrix.identity(n)
    stacked = None
    for m in (mp.a, mp.b):
        block = kron(m.transpose(), identity) - kron(identity, m)
        stacked = block if stacked is None else stacked.vstack(block)
    assert stacked is not None
    return [unvec(v, n, n) for v in kernel_basis(stacked)]


def _spectral_projector(c: DenseMatrix) -> DenseMatrix | None:
    """Projector onto the generalized eigenspace of c's largest rational eigenvalue.

    None unless c has at least two distinct rational eigenvalues.
    """
    p = char_poly(c)
    roots = rational_roots(p)
    if len(roots) < 2:
        return None
    value, mult = roots[-1]
    factor = Polynomial([1])
    for _ in range(mult):
        factor = factor * Polynomial([-value, 1])
    cofactor, _ = divmod(p, factor)
    _, t, _ = gcdex(factor, cofactor)
    return c.evaluate(t * cofactor)


def _candidates(basis: Sequence[DenseMatrix], tries: int = 24) -> list[DenseMatrix]:
    out = list(basis)
    out += [x + y for i, x in enumerate(basis) for y in basis[i + 1 :]]
    rng = random.Random(0)
    for _ in range(tries):
        total = DenseMatrix.zeros(basis[0].rows)
        for element in basis:
            total = total + element.scale(rng.randint(-3, 3))
        out.append(total)
    return out


def is_indecomposable(mp: ModulePair) -> EndAlgebraReport:
    """Decide indecomposability from the endomorphism algebra E.

    rad E is the kernel of the trace form on E. When E/rad E is one
    dimensional the module is indecomposable. Otherwise a spectral projector
    of some element of E with two distinct rational eigenvalues splits it.
    Failing that, E/rad E may be a proper division algebra over the
    rationals and the verdict is Inconclusive.
    """
    if not verify_equation(mp):
        raise NotAModule(f"the pair does not satisfy the {mp.flavor.value} equations")
    basis = commutant(mp)
    gram = DenseMatrix.from_rows([[(x @ y).trace() for y in basis] for x in basis])
    quotient = gram.rank()
    radical = len(basis) - quotient
    LOG.debug("commutant of dimension %d with radical of dimension %d", len(basis), radical)
    if quotient == 1:
        return EndAlgebraReport(tuple(basis), radical, quotient, Verdict.INDECOMPOSABLE)
    for c in _candidates(basis):
        e = _spectral_projector(c)
        if e is not None:
            return EndAlgebraReport(tuple(basis), radical, quotient, Verdict.DECOMPOSABLE, e)
    return EndAlgebraReport(tuple(basis), radical, quotient, Verdict.INCONCLUSIVE)


def direct_sum(first: ModulePair, second: ModulePair) -> ModulePair:
    """Block-diagonal sum of two pairs of the same flavor."""
    if first.flavor is not second.flavor:
        raise FlavorMismatch(
            f"cannot add a {first.flavor.value} module to a {second.flavor.value} module"
        )
    return ModulePair(
        DenseMatrix.block_diagonal([first.a, second.a]),
        DenseMatrix.block_diagonal([first.b, second.b]),
        first.flavor,
    )


@dataclass(frozen=True)
class AnalysisReport:
    """Everything `analyze` finds out about one module pair."""

    module: ModulePair
    valid: bool
    irreducible: bool | None = None
    witness: SubmoduleWitness | None = None
    witness_note: str | None = None
    verdict: Verdict | None = None
    commutant_dim: int | None = None
    regular_rank: int | None = None


def analyze(mp: ModulePair) -> AnalysisReport:
    """Validity, irreducibility with witness, indecomposability and the regular part.

    `regular_rank` is dim M₋₁(B), the rank of the regular projector when B is
    quasi-idempotent.
    """
    if not verify_equation(mp):
        return AnalysisReport(mp, valid=False)
    irreducibility = is_irreducible(mp)
    end = is_indecomposable(mp)
    return AnalysisReport(
        module=mp,
        valid=True,
        irreducible=irreducibility.irreducible,
        witness=irreducibility.witness,
        witness_note=irreducibility.note,
        verdict=end.verdict,
        commutant_dim=len(end.commutant_basis),
        regular_rank=len(eigenspace(mp.b, -1)),
    )
