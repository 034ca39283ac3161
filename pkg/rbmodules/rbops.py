"""Monomial Rota-Baxter operators on truncated k[x] and the module axiom.

The four nonzero-weight monomial operators on k[x], plus the restriction to
xk[x] (family XKx), act on monomials by

    P1: x^n -> (-λ)^(1-n) b^n        P2: x^n -> -λ x^n
    P3: 1 -> 0, x^n -> -λ x^n        P4: 1 -> -λ, x^n -> 0
    XKx (n >= 1): x^n -> -λ x^n

Every image has degree at most n, so checking identities on monomials of
total degree <= N never needs terms beyond the truncation.

    >>> op = RBOperator(Family.P2, weight=1, truncation=4)
    >>> apply_operator(op, Polynomial([0, 1, 3]))
    Polynomial('-x + -3x^2')
    >>> verify_rb_identity(op).holds
    True
"""

from __future__ import annotations

import enum
import logging
import os
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from .exactcore import DenseMatrix, DimensionMismatch, Polynomial, Scalar, Vector

LOG = logging.getLogger("rbmodules")


def _truncation_from_env() -> int:
    raw = os.environ.get("RBMOD_TRUNCATION")
    if raw is None:
        return 12
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        LOG.warning("Ignoring RBMOD_TRUNCATION=%r; expected an integer >= 1", raw)
        return 12
    return value


DEFAULT_TRUNCATION = _truncation_from_env()


class TruncationExceeded(ValueError):  # noqa: N818
    """A polynomial has degree above the operator's truncation degree."""


class ConstantTermNotAllowed(ValueError):  # noqa: N818
    """An element of xk[x] was expected, but the polynomial has a constant term."""


class FlavorMismatch(ValueError):  # noqa: N818
    """The operator family and the module pair's flavor disagree."""


class InvalidOperator(ValueError):  # noqa: N818
    """Operator parameters violate the family's constraints."""


class Family(str, enum.Enum):
    """Monomial Rota-Baxter operator families of nonzero weight."""

    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    XKX = "XKx"


class Flavor(str, enum.Enum):
    """Which matrix equations a module pair (A, B) must satisfy.

    KxP1/KxP4: B² = -B and BA = -BAB. KxP2/KxP3: B² = -B and AB = -BAB.
    XKx: AB = -BAB only.
    """

    KXP1 = "KxP1"
    KXP2 = "KxP2"
    KXP3 = "KxP3"
    KXP4 = "KxP4"
    XKX = "XKx"

    @classmethod
    def parse(cls, name: str) -> Flavor:
        """Case-insensitive lookup, e.g. 'xkx' or 'KXP2'."""
        for flavor in cls:
            if flavor.value.lower() == name.strip().lower():
                return flavor
        raise ValueError(
            f"unknown flavor {name!r}; expected one of "
            + ", ".join(f.value for f in cls)
        )

    @property
    def quasi_idempotent(self) -> bool:
        """Whether B² = -B is part of the flavor's equations."""
        return self is not Flavor.XKX

    @property
    def acts_left(self) -> bool:
        """Whether the side condition is BA = -BAB rather than AB = -BAB."""
        return self in (Flavor.KXP1, Flavor.KXP4)


FLAVOR_OF_FAMILY = {
    Family.P1: Flavor.KXP1,
    Family.P2: Flavor.KXP2,
    Family.P3: Flavor.KXP3,
    Family.P4: Flavor.KXP4,
    Family.XKX: Flavor.XKX,
}


@dataclass(frozen=True)
class RBOperator:
    """A monomial Rota-Baxter operator of nonzero weight on k[x]_{<=N} or xk[x]_{<=N}."""

    family: Family
    weight: Fraction
    b: Fraction | None = None
    truncation: int = field(default=DEFAULT_TRUNCATION)

    def __init__(
        self,
        family: Family,
        weight: Scalar = 1,
        b: Scalar | None = None,
        truncation: int | None = None,
    ) -> None:
        """Validate and normalize the parameters to exact rationals."""
        weight = Fraction(weight)
        if not weight:
            raise InvalidOperator("weight must be nonzero")
        if family is Family.P1:
            if b is None or not Fraction(b):
                raise InvalidOperator("family P1 needs a nonzero constant b")
            b = Fraction(b)
        elif b is not None:
            raise InvalidOperator(f"family {family.value} takes no constant b")
        truncation = DEFAULT_TRUNCATION if truncation is None else truncation
        if truncation < 1:
            raise InvalidOperator("truncation degree must be at least 1")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "truncation", truncation)

    @property
    def flavor(self) -> Flavor:
        """The module flavor this operator's modules have."""
        return FLAVOR_OF_FAMILY[self.family]

    @property
    def lowest_degree(self) -> int:
        """1 on xk[x], else 0."""
        return 1 if self.family is Family.XKX else 0

    def image(self, degree: int) -> Polynomial:
        """P(x^degree)."""
        lam = self.weight
        if self.family is Family.P1:
            assert self.b is not None
            return Polynomial.constant((-lam) ** (1 - degree) * self.b**degree)
        if self.family is Family.P2:
            return Polynomial.monomial(degree, -lam)
        if self.family is Family.P3:
            return Polynomial() if degree == 0 else Polynomial.monomial(degree, -lam)
        if self.family is Family.P4:
            return Polynomial.constant(-lam) if degree == 0 else Polynomial()
        if degree == 0:
            raise ConstantTermNotAllowed("P(1) is undefined on xk[x]")
        return Polynomial.monomial(degree, -lam)


def apply_operator(op: RBOperator, f: Polynomial) -> Polynomial:
    """Apply the linear extension of the operator's monomial rule to f."""
    if f.degree > op.truncation:
        raise TruncationExceeded(
            f"degree {f.degree} exceeds truncation degree {op.truncation}"
        )
    if op.family is Family.XKX and f.coefficient(0):
        raise ConstantTermNotAllowed(
            f"{f} has constant term {f.coefficient(0)}; XKx acts on xk[x]"
        )
    result = Polynomial()
    for degree, coeff in enumerate(f.coefficients):
        if coeff:
            result = result + op.image(degree).scale(coeff)
    return result


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of an exhaustive check over monomial pairs."""

    holds: bool
    first_failure: tuple[int, int] | None = None
    checked: int = 0


def verify_rb_identity(op: RBOperator) -> IdentityReport:
    """Check P(r)P(s) = P(P(r)s) + P(rP(s)) + λP(rs) on all x^m, x^n with m + n <= N.

    Pairs are visited with m ascending, then n ascending.
    """
    lo, top = op.lowest_degree, op.truncation
    checked = 0
    for m in range(lo, top + 1):
        pm = op.image(m)
        xm = Polynomial.monomial(m)
        for n in range(lo, top - m + 1):
            pn = op.image(n)
            xn = Polynomial.monomial(n)
            lhs = pm * pn
            rhs = (
                apply_operator(op, pm * xn)
                + apply_operator(op, xm * pn)
                + apply_operator(op, xm * xn).scale(op.weight)
            )
            checked += 1
            if lhs != rhs:
                LOG.debug("Rota-Baxter identity fails at (%d, %d): %s != %s", m, n, lhs, rhs)
                return IdentityReport(False, (m, n), checked)
    return IdentityReport(True, None, checked)


@dataclass(frozen=True)
class ModulePair:
    """Matrices A (action of x) and B (action of p) on an n-dimensional space."""

    a: DenseMatrix
    b: DenseMatrix
    flavor: Flavor

    def __post_init__(self) -> None:
        """Require nonempty square matrices of equal size."""
        if not (self.a.is_square and self.b.is_square):
            raise DimensionMismatch(
                f"A is {self.a.rows}x{self.a.cols} and B is {self.b.rows}x{self.b.cols}; both must be square"
            )
        if self.a.rows != self.b.rows:
            raise DimensionMismatch(
                f"A is {self.a.rows}x{self.a.rows} but B is {self.b.rows}x{self.b.rows}"
            )
        if self.a.rows < 1:
            raise DimensionMismatch("a module needs dimension at least 1, got 0x0 matrices")

    @property
    def dim(self) -> int:
        """Dimension n of the module."""
        return self.a.rows

    def conjugate(self, s: DenseMatrix) -> ModulePair:
        """The isomorphic pair (S·A·S⁻¹, S·B·S⁻¹)."""
        s_inv = s.inverse()
        return ModulePair(s @ self.a @ s_inv, s @ self.b @ s_inv, self.flavor)

    def with_flavor(self, flavor: Flavor) -> ModulePair:
        """Same matrices under another flavor."""
        return ModulePair(self.a, self.b, flavor)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the module-axiom check; `first_failure` is a degree m."""

    holds: bool
    first_failure: int | None = None


def _check_flavor(op: RBOperator, mp: ModulePair) -> None:
    if op.flavor is not mp.flavor:
        raise FlavorMismatch(
            f"operator family {op.family.value} needs flavor {op.flavor.value}, got {mp.flavor.value}"
        )


def verify_module_axiom(op: RBOperator, mp: ModulePair) -> AxiomReport:
    """Check P(f)p(v) = p(P(f)v) + p(f p(v)) + λ p(f v) for f = x^m, m <= N.

    x^m acts as A^m and P(x^m) as the matrix polynomial P(x^m)(A), a scalar
    matrix when the image is constant. The weight is the operator's own, so
    weight-λ modules are checked directly.
    """
    _check_flavor(op, mp)
    a, b = mp.a, mp.b
    power = a.power(op.lowest_degree)
    for m in range(op.lowest_degree, op.truncation + 1):
        image = a.evaluate(op.image(m))
        lhs = image @ b
        bam = b @ power
        rhs = b @ image + bam @ b + bam.scale(op.weight)
        if lhs != rhs:
            return AxiomReport(False, m)
        power = power @ a
    return AxiomReport(True, None)


@dataclass(frozen=True)
class _SemidirectElement:
    """(f, u) in k[x] ⊕ M."""

    poly: Polynomial
    vector: Vector


def semidirect_sum_check(op: RBOperator, mp: ModulePair) -> bool:
    """Check that P + p is a Rota-Baxter operator on k[x]_{<=N} ⊕ M.

    The product is (f, u)(g, v) = (fg, f·v + g·u); all pairs of basis
    elements with total polynomial degree at most N are tested.
    """
    _check_flavor(op, mp)
    n = mp.dim
    zero = tuple(Fraction(0) for _ in range(n))

    def act(f: Polynomial, v: Vector) -> Vector:
        return mp.a.evaluate(f).apply(v)

    def add(*vectors: Vector) -> Vector:
        return tuple(sum(col, Fraction(0)) for col in zip(*vectors))

    def mul(x: _SemidirectElement, y: _SemidirectElement) -> _SemidirectElement:
        return _SemidirectElement(
            x.poly * y.poly, add(act(x.poly, y.vector), act(y.poly, x.vector))
        )

    def q(x: _SemidirectElement) -> _SemidirectElement:
        return _SemidirectElement(apply_operator(op, x.poly), mp.b.apply(x.vector))

    def plus(*xs: _SemidirectElement) -> _SemidirectElement:
        total = Polynomial()
        for x in xs:
            total = total + x.poly
        return _SemidirectElement(total, add(*(x.vector for x in xs)))

    def scaled(x: _SemidirectElement, c: Fraction) -> _SemidirectElement:
        return _SemidirectElement(x.poly.scale(c), tuple(c * e for e in x.vector))

    basis: list[tuple[_SemidirectElement, int]] = [
        (_SemidirectElement(Polynomial.monomial(m), zero), m)
        for m in range(op.lowest_degree, op.truncation + 1)
    ]
    basis += [
        (_SemidirectElement(Polynomial(), tuple(Fraction(i == j) for i in range(n))), 0)
        for j in range(n)
    ]
    for x, dx in basis:
        for y, dy in basis:
            if dx + dy > op.truncation:
                continue
            lhs = mul(q(x), q(y))
            rhs = plus(q(mul(q(x), y)), q(mul(x, q(y))), scaled(q(mul(x, y)), op.weight))
            if lhs != rhs:
                return False
    return True


def normalize_weight(op: RBOperator, mp: ModulePair) -> tuple[RBOperator, ModulePair]:
    """Rescale to weight 1: (λ⁻¹P, λ⁻¹p).

    For P1 this turns the constant b into b/λ, since
    λ⁻¹(-λ)^(1-n) b^n = (-1)^(1-n) (b/λ)^n.
    """
    lam = op.weight
    b = op.b / lam if op.b is not None else None
    return (
        RBOperator(op.family, 1, b, op.truncation),
        ModulePair(mp.a, mp.b.scale(1 / lam), mp.flavor),
    )


def denormalize_weight(
    op: RBOperator, mp: ModulePair, weight: Scalar
) -> tuple[RBOperator, ModulePair]:
    """Inverse of `normalize_weight`: (λP, λp) from a weight-1 pair."""
    lam = Fraction(weight)
    if op.weight != 1:
        raise InvalidOperator("denormalization starts from a weight-1 operator")
    b = op.b * lam if op.b is not None else None
    return (
        RBOperator(op.family, lam, b, op.truncation),
        ModulePair(mp.a, mp.b.scale(lam), mp.flavor),
    )


def derived_identities_hold(
    mp: ModulePair, truncation: int = DEFAULT_TRUNCATION, powers: int = 4
) -> bool:
    """Check the consequences y x^m = y x^m (-y)^k or x^m y = (-y)^k x^m y as matrices.

    KxP1/KxP4 use B·A^m·(-B)^k = B·A^m; the other flavors use
    (-B)^k·A^m·B = A^m·B, with m >= 1 on xk[x].
    """
    a, b = mp.a, mp.b
    neg_b = -b
    lo = 1 if mp.flavor is Flavor.XKX else 0
    check: Callable[[DenseMatrix, DenseMatrix], bool]
    if mp.flavor.acts_left:

        def check(am: DenseMatrix, nb_k: DenseMatrix) -> bool:
            return b @ am @ nb_k == b @ am

    else:

        def check(am: DenseMatrix, nb_k: DenseMatrix) -> bool:
            return nb_k @ am @ b == am @ b

    am = a.power(lo)
    for _ in range(lo, truncation + 1):
        nb_k = DenseMatrix.identity(mp.dim)
        for _ in range(powers):
            nb_k = nb_k @ neg_b
            if not check(am, nb_k):
                return False
        am = am @ a
    return True
