"""Porosity and density of the Menger sponge.

Three formulations:

* classical, iteration ``n >= 0`` with ``n = 0`` the solid cube;
* grossone, over a :class:`~grossporo.geometry.SpongeQuery` (``n = 1`` is the
  solid cube, optionally started at level ``k``);
* Turcotte's construction from unit cubes of size ``r0`` and density
  ``rho0``, exactly per order or through the power law in ``r0 / r``.

The exact paths return :class:`~fractions.Fraction` / GrossValue results; the
power law is irrational and is evaluated with :mod:`decimal`.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DomainError
from .geometry import SpongeQuery, decimal_ln_ratio
from .grossone import ONE, GrossValue, const, rational_power

__all__ = [
    "SOLID_RATIO",
    "PorosityResult",
    "TurcotteSponge",
    "porosity_classical",
    "porosity_grossone",
    "turcotte_order",
    "turcotte_scaling",
    "sponge_dimension",
]

SOLID_RATIO = Fraction(20, 27)


@dataclass(frozen=True)
class PorosityResult:
    phi: GrossValue
    solid_volume: GrossValue
    void_volume: GrossValue


def _from_solid(solid: GrossValue) -> PorosityResult:
    void = ONE - solid
    # void / (void + solid) with void + solid == 1
    return PorosityResult(phi=void, solid_volume=solid, void_volume=void)


def porosity_classical(n: int) -> PorosityResult:
    """Porosity ``1 - (20/27)**n`` after ``n`` classical iterations.

    >>> porosity_classical(2).phi
    GrossValue('329/729')
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return _from_solid(const(SOLID_RATIO**n))


def porosity_grossone(q: SpongeQuery) -> PorosityResult:
    """Porosity ``1 - (20/27)**(n + k - 2)``; finite n gives exact rationals,
    gross n a value infinitesimally below 1."""
    return _from_solid(rational_power(SOLID_RATIO, q.exponent))


@dataclass(frozen=True)
class TurcotteSponge:
    """Sponge built from cubes of size ``r0`` and density ``rho0``."""

    r0: Fraction | float = 1
    rho0: Fraction | float = 1

    def __post_init__(self) -> None:
        if self.r0 <= 0 or self.rho0 <= 0:
            raise DomainError("r0 and rho0 must be positive")

    def size(self, n: int):
        return 3**n * self.r0

    def density(self, n: int):
        return self.rho0 * turcotte_order(n)[1]

    def solid_cubes(self, n: int) -> int:
        return 20**n


def turcotte_order(n: int, sponge: TurcotteSponge | None = None) -> tuple[Fraction, Fraction]:
    """``(porosity, rho_n / rho0)`` of the order-``n`` sponge.

    The ratios do not depend on ``r0`` or ``rho0``; ``sponge`` is accepted
    for symmetry with :func:`turcotte_scaling`.
    """
    if n < 0:
        raise DomainError(f"order must be >= 0, got {n}")
    density_ratio = SOLID_RATIO**n
    return 1 - density_ratio, density_ratio


def sponge_dimension(digits: int = 34) -> Decimal:
    """ln 20 / ln 3 to ``digits`` significant digits."""
    return decimal_ln_ratio(20, 3, digits)


def turcotte_scaling(r0, r, d_f=None, digits: int = 34) -> tuple[Decimal, Decimal]:
    """Power-law porosity and density ratio ``(r0 / r) ** (3 - d_f)``.

    ``d_f`` defaults to the sponge dimension at ``digits`` precision.  Inputs
    may be ints, Fractions, Decimals or decimal strings.
    """
    with localcontext() as ctx:
        ctx.prec = digits + 5
        r0_d = _to_decimal(r0)
        r_d = _to_decimal(r)
        d = sponge_dimension(digits + 5) if d_f is None else _to_decimal(d_f)
        if not 0 < r0_d <= r_d:
            raise DomainError(f"need 0 < r0 <= r, got r0={r0}, r={r}")
        if not 0 < d < 3:
            raise DomainError(f"fractal dimension must lie in (0, 3), got {d_f}")
        ratio = (r0_d / r_d) ** (3 - d)
        phi = 1 - ratio
    with localcontext() as ctx:
        ctx.prec = digits
        return +phi, +ratio


def _to_decimal(x) -> Decimal:
    if isinstance(x, Fraction):
        return Decimal(x.numerator) / Decimal(x.denominator)
    if isinstance(x, float):
        return Decimal(repr(x))
    return Decimal(x)
