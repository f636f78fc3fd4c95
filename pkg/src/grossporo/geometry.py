"""Menger sponge and Sierpinski carpet geometry at finite and gross iteration
counts.

Iteration ``n = 1`` is the unpartitioned cube (or square).  Starting the
process at level ``k`` shifts every exponent, so all quantities depend on
``e = n + k - 2`` only::

    sponge:  N = 20**e,  L = 3**-e,  V = L**3 * N = (20/27)**e
    carpet:  N = 8**e,   L = 3**-e,  A = L**2 * N = (8/9)**e
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from .errors import DomainError
from .grossone import GrossLinear, GrossValue, gv_mul, rational_power

__all__ = [
    "IterationIndex",
    "SpongeQuery",
    "SpongeGeometry",
    "CarpetGeometry",
    "FractalObject",
    "DimensionEstimate",
    "menger_geometry",
    "carpet_geometry",
    "carpet_area",
    "fractal_dimension",
    "dimension_estimate_at",
    "decimal_ln_ratio",
]


@dataclass(frozen=True)
class IterationIndex:
    """Either a finite iteration ``n >= 1`` or ``g - m`` with ``m >= 0``."""

    value: int
    gross: bool = False

    def __post_init__(self) -> None:
        if self.gross and self.value < 0:
            raise DomainError(f"gross offset must be nonnegative, got g-{self.value}")
        if not self.gross and self.value < 1:
            raise DomainError(f"finite iteration must be >= 1, got {self.value}")

    @classmethod
    def finite(cls, n: int) -> IterationIndex:
        return cls(n, False)

    @classmethod
    def gross_offset(cls, m: int = 0) -> IterationIndex:
        return cls(m, True)

    @classmethod
    def parse(cls, text: str) -> IterationIndex:
        """``"7"`` -> finite 7; ``"g"``, ``"g-3"`` (or with ``①``) -> gross."""
        s = text.strip().replace("①", "g").replace(" ", "")
        m = re.fullmatch(r"g(?:-(\d+))?", s)
        if m:
            return cls.gross_offset(int(m.group(1) or 0))
        if re.fullmatch(r"\d+", s):
            return cls.finite(int(s))
        raise DomainError(f"bad iteration index {text!r}; use N or g-M")

    def as_linear(self) -> GrossLinear:
        if self.gross:
            return GrossLinear(1, -self.value)
        return GrossLinear(0, self.value)

    def shifted(self, d: int) -> IterationIndex:
        if self.gross:
            return IterationIndex(self.value - d, True)
        return IterationIndex(self.value + d, False)

    def __str__(self) -> str:
        if not self.gross:
            return str(self.value)
        return "g" if self.value == 0 else f"g-{self.value}"


@dataclass(frozen=True)
class SpongeQuery:
    """Start level ``k`` and iteration ``n`` with ``1 <= k <= n <= g + k - 1``."""

    k: int
    n: IterationIndex

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DomainError(f"start level k must be >= 1, got {self.k}")
        if not self.n.gross and self.n.value < self.k:
            raise DomainError(f"iteration n={self.n.value} is below start level k={self.k}")

    @property
    def exponent(self) -> GrossLinear:
        return self.n.as_linear() + (self.k - 2)


@dataclass(frozen=True)
class SpongeGeometry:
    count: GrossValue
    side: GrossValue
    volume: GrossValue


@dataclass(frozen=True)
class CarpetGeometry:
    count: GrossValue
    side: GrossValue
    area: GrossValue


def menger_geometry(q: SpongeQuery) -> SpongeGeometry:
    e = q.exponent
    count = rational_power(20, e)
    side = rational_power(3, -e)
    volume = rational_power(Fraction(20, 27), e)
    assert gv_mul(gv_mul(gv_mul(side, side), side), count) == volume
    return SpongeGeometry(count, side, volume)


def carpet_geometry(q: SpongeQuery) -> CarpetGeometry:
    e = q.exponent
    count = rational_power(8, e)
    side = rational_power(3, -e)
    area = rational_power(Fraction(8, 9), e)
    assert gv_mul(gv_mul(side, side), count) == area
    return CarpetGeometry(count, side, area)


def carpet_area(q: SpongeQuery) -> GrossValue:
    return carpet_geometry(q).area


class FractalObject(enum.Enum):
    SPONGE = "sponge"
    CARPET = "carpet"

    @property
    def filled(self) -> int:
        """Boxes kept per subdivision."""
        return 20 if self is FractalObject.SPONGE else 8


def decimal_ln_ratio(num: int | Fraction, den: int | Fraction, prec: int) -> Decimal:
    """``ln(num) / ln(den)`` with ``prec`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = prec + 5
        top = Decimal(Fraction(num).numerator).ln() - Decimal(Fraction(num).denominator).ln()
        bot = Decimal(Fraction(den).numerator).ln() - Decimal(Fraction(den).denominator).ln()
        ratio = top / bot
    with localcontext() as ctx:
        ctx.prec = prec
        return +ratio


def fractal_dimension(obj: FractalObject | str, precision: int = 9) -> Decimal:
    """``ln(filled) / ln 3`` correctly rounded to ``precision`` decimal places.

    >>> fractal_dimension("sponge", 9)
    Decimal('2.726833028')
    """
    obj = FractalObject(obj)
    if precision < 1:
        raise DomainError("precision must be >= 1")
    quantum = Decimal(1).scaleb(-precision)
    guard = 10
    while True:
        # accept once two working precisions round to the same digits
        lo = decimal_ln_ratio(obj.filled, 3, precision + guard)
        hi = decimal_ln_ratio(obj.filled, 3, precision + 2 * guard)
        with localcontext() as ctx:
            ctx.prec = precision + 2 * guard + 5
            a = lo.quantize(quantum, rounding=ROUND_HALF_EVEN)
            b = hi.quantize(quantum, rounding=ROUND_HALF_EVEN)
        if a == b:
            return b
        guard *= 2


@dataclass(frozen=True)
class DimensionEstimate:
    """``-ln(count) / ln(side)`` at a finite iteration."""

    count: int
    side: Fraction
    value: Decimal


def dimension_estimate_at(n: int, obj: FractalObject | str = FractalObject.SPONGE,
                          digits: int = 34) -> DimensionEstimate:
    """Box-counting ratio with the classical counts ``20**n`` and ``3**-n``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    obj = FractalObject(obj)
    count = obj.filled**n
    side = Fraction(1, 3**n)
    with localcontext() as ctx:
        ctx.prec = digits
        value = -decimal_ln_ratio(count, side, digits)
    return DimensionEstimate(count, side, value)
