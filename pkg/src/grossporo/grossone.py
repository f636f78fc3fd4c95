"""Exact gross-numbers: rational combinations of powers of grossone and of
prime-power exponentials in grossone.

A :class:`GrossValue` is a canonical sum of

* :class:`PolyTerm` monomials ``c * g**p`` (``p`` rational), and
* :class:`ExpTerm` monomials ``c * prod(p_i ** (a_i * g))`` over distinct
  primes ``p_i``.

Every finite offset in an exponent is folded into the coefficient during
normalization, so two canonical values are equal exactly when their term
tuples are equal.  Rationals are :class:`fractions.Fraction` throughout.

Ordering between classes follows the convention

    exponentially infinite > any power of g > exponentially infinitesimal

which is standard asymptotic dominance evaluated at the fixed infinite
integer g.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError, GrossUnsupported, NonIntegerExponent

__all__ = [
    "GrossLinear",
    "PolyTerm",
    "ExpTerm",
    "GrossValue",
    "NumClass",
    "Ordering",
    "gv_normalize",
    "gv_add",
    "gv_neg",
    "gv_mul",
    "gv_cmp",
    "gv_classify",
    "gv_substitute",
    "gv_reciprocal",
    "gv_pow",
    "render",
    "G",
    "ZERO",
    "ONE",
    "const",
    "rational_power",
    "factorize",
]

RationalLike = Union[int, Fraction]


def _q(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# prime factorization

_TRIAL_LIMIT = 10**6


@functools.lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of a positive integer as ``((p, k), ...)``."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out.append((p, k))
    p, step = 7, 4
    while p * p <= n and p < _TRIAL_LIMIT:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += step
        step = 6 - step
    if n > 1:
        if p * p <= n:
            # large cofactor without small divisors
            from sympy import factorint

            out.extend(sorted(factorint(n).items()))
        else:
            out.append((n, 1))
    return tuple(sorted(out))


def _rational_factors(r: Fraction) -> list[tuple[int, int]]:
    fac = [(p, k) for p, k in factorize(r.numerator)] if r.numerator > 1 else []
    if r.denominator > 1:
        fac += [(p, -k) for p, k in factorize(r.denominator)]
    return fac


# ---------------------------------------------------------------------------
# term types


@dataclass(frozen=True)
class GrossLinear:
    """The value ``a * g + b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _q(self.a))
        object.__setattr__(self, "b", _q(self.b))

    @property
    def is_finite(self) -> bool:
        return self.a == 0

    def __add__(self, other: GrossLinear | RationalLike) -> GrossLinear:
        if isinstance(other, GrossLinear):
            return GrossLinear(self.a + other.a, self.b + other.b)
        return GrossLinear(self.a, self.b + _q(other))

    __radd__ = __add__

    def __neg__(self) -> GrossLinear:
        return GrossLinear(-self.a, -self.b)

    def __sub__(self, other: GrossLinear | RationalLike) -> GrossLinear:
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> GrossLinear:
        return (-self) + other

    def __mul__(self, k: RationalLike) -> GrossLinear:
        k = _q(k)
        return GrossLinear(self.a * k, self.b * k)

    __rmul__ = __mul__

    def to_value(self) -> GrossValue:
        return gv_normalize([PolyTerm(self.a, 1), PolyTerm(self.b, 0)])

    def __str__(self) -> str:
        return _render_linear(self)


@dataclass(frozen=True)
class PolyTerm:
    """``coeff * g**power``."""

    coeff: Fraction
    power: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", _q(self.coeff))
        object.__setattr__(self, "power", _q(self.power))


@dataclass(frozen=True)
class ExpTerm:
    """``coeff * prod(base ** exponent)`` with gross-linear exponents.

    Raw terms may use any rational bases; canonical terms (inside a
    :class:`GrossValue`) use ascending distinct primes and zero finite
    exponent parts.
    """

    coeff: Fraction
    factors: tuple[tuple[Fraction, GrossLinear], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", _q(self.coeff))
        object.__setattr__(
            self, "factors", tuple((_q(b), e) for b, e in self.factors)
        )

    @property
    def growth(self) -> tuple[tuple[int, Fraction], ...]:
        """``((prime, a), ...)`` of a canonical term."""
        return tuple((int(p), e.a) for p, e in self.factors)


class NumClass(enum.Enum):
    EXPONENTIALLY_INFINITE = "ExponentiallyInfinite"
    POLYNOMIALLY_INFINITE = "PolynomiallyInfinite"
    FINITE = "Finite"
    POLYNOMIALLY_INFINITESIMAL = "PolynomiallyInfinitesimal"
    EXPONENTIALLY_INFINITESIMAL = "ExponentiallyInfinitesimal"
    ZERO = "Zero"

    def __str__(self) -> str:
        return self.value


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


# ---------------------------------------------------------------------------
# growth keys

Growth = tuple[tuple[int, Fraction], ...]


def _growth_cmp(g1: Growth, g2: Growth) -> int:
    """Compare prod(p**a) of two growth keys exactly."""
    diff: dict[int, Fraction] = dict(g1)
    for p, a in g2:
        diff[p] = diff.get(p, Fraction(0)) - a
    diff = {p: a for p, a in diff.items() if a}
    if not diff:
        return 0
    d = math.lcm(*(a.denominator for a in diff.values()))
    num = den = 1
    for p, a in diff.items():
        k = int(a * d)
        if k > 0:
            num *= p**k
        else:
            den *= p ** (-k)
    return (num > den) - (num < den)


def _growth_vs_one(g: Growth) -> int:
    return _growth_cmp(g, ())


def _exp_sort_key():
    return functools.cmp_to_key(lambda s, t: -_growth_cmp(s[0], t[0]))


# ---------------------------------------------------------------------------
# GrossValue


@functools.total_ordering
class GrossValue:
    """Immutable canonical gross-number.  Build with :func:`gv_normalize`."""

    __slots__ = ("poly", "exp", "_hash")

    poly: tuple[PolyTerm, ...]
    exp: tuple[ExpTerm, ...]

    def __init__(self, poly: tuple[PolyTerm, ...] = (), exp: tuple[ExpTerm, ...] = ()):
        object.__setattr__(self, "poly", tuple(poly))
        object.__setattr__(self, "exp", tuple(exp))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GrossValue is immutable")

    # structure ------------------------------------------------------------

    def terms(self) -> list[PolyTerm | ExpTerm]:
        """All terms in descending magnitude order."""
        big = [t for t in self.exp if _growth_vs_one(t.growth) > 0]
        small = [t for t in self.exp if _growth_vs_one(t.growth) < 0]
        return [*big, *self.poly, *small]

    @property
    def is_zero(self) -> bool:
        return not self.poly and not self.exp

    @property
    def is_rational(self) -> bool:
        return not self.exp and all(t.power == 0 for t in self.poly)

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{render(self)} is not a finite rational")
        return self.poly[0].coeff if self.poly else Fraction(0)

    def finite_part(self) -> Fraction:
        """Coefficient of g**0."""
        for t in self.poly:
            if t.power == 0:
                return t.coeff
        return Fraction(0)

    def as_linear(self) -> GrossLinear:
        if self.exp or any(t.power not in (0, 1) for t in self.poly):
            raise GrossUnsupported(f"{render(self)} is not of the form a*g + b")
        a = sum((t.coeff for t in self.poly if t.power == 1), Fraction(0))
        return GrossLinear(a, self.finite_part())

    # dunder arithmetic ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = const(other)
        if not isinstance(other, GrossValue):
            return NotImplemented
        return self.poly == other.poly and self.exp == other.exp

    def __lt__(self, other: GrossValue | RationalLike) -> bool:
        return gv_cmp(self, _lift(other)) is Ordering.LESS

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.poly, self.exp)))
        return self._hash

    def __add__(self, other: GrossValue | RationalLike) -> GrossValue:
        return gv_add(self, _lift(other))

    __radd__ = __add__

    def __neg__(self) -> GrossValue:
        return gv_neg(self)

    def __sub__(self, other: GrossValue | RationalLike) -> GrossValue:
        return gv_add(self, gv_neg(_lift(other)))

    def __rsub__(self, other: RationalLike) -> GrossValue:
        return gv_add(_lift(other), gv_neg(self))

    def __mul__(self, other: GrossValue | RationalLike) -> GrossValue:
        return gv_mul(self, _lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other: GrossValue | RationalLike) -> GrossValue:
        return gv_mul(self, gv_reciprocal(_lift(other)))

    def __rtruediv__(self, other: RationalLike) -> GrossValue:
        return gv_mul(_lift(other), gv_reciprocal(self))

    def __pow__(self, e: GrossLinear | RationalLike) -> GrossValue:
        return gv_pow(self, e if isinstance(e, GrossLinear) else GrossLinear(0, e))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"GrossValue({render(self)!r})"


def _lift(x: GrossValue | RationalLike) -> GrossValue:
    if isinstance(x, GrossValue):
        return x
    return const(x)


def _exp_from_growth(coeff: Fraction, growth: Growth) -> ExpTerm:
    return ExpTerm(coeff, tuple((Fraction(p), GrossLinear(a, 0)) for p, a in growth))


def _build(poly: dict[Fraction, Fraction], exp: dict[Growth, Fraction]) -> GrossValue:
    pt = tuple(
        PolyTerm(c, p) for p, c in sorted(poly.items(), key=lambda kv: -kv[0]) if c
    )
    items = sorted(((g, c) for g, c in exp.items() if c), key=_exp_sort_key())
    return GrossValue(pt, tuple(_exp_from_growth(c, g) for g, c in items))


def _canonical_exp(term: ExpTerm) -> tuple[Fraction, Growth]:
    """Rewrite a raw ExpTerm over primes; return (coeff, growth)."""
    coeff = term.coeff
    growth: dict[int, Fraction] = {}
    finite: dict[int, Fraction] = {}
    for base, e in term.factors:
        if base <= 0:
            if e.a != 0:
                raise GrossUnsupported(f"nonpositive base {base} raised to a gross exponent")
            if e.b.denominator != 1:
                raise GrossUnsupported(f"nonpositive base {base} raised to {e.b}")
            if base == 0 and e.b < 0:
                raise DomainError("zero raised to a negative power")
            coeff *= base ** int(e.b)
            continue
        for p, k in _rational_factors(base):
            if e.a:
                growth[p] = growth.get(p, Fraction(0)) + k * e.a
            if e.b:
                finite[p] = finite.get(p, Fraction(0)) + k * e.b
    for p, b in finite.items():
        if b.denominator != 1:
            raise GrossUnsupported(f"irrational factor {p}^({b})")
        coeff *= Fraction(p) ** int(b)
    return coeff, tuple(sorted((p, a) for p, a in growth.items() if a))


def gv_normalize(raw_terms: Iterable[PolyTerm | ExpTerm | GrossValue]) -> GrossValue:
    """Canonical sum of ``raw_terms``.

    >>> str(gv_normalize([PolyTerm(3, 1), PolyTerm(2), PolyTerm(-2)]))
    '3*g'
    """
    poly: dict[Fraction, Fraction] = {}
    exp: dict[Growth, Fraction] = {}

    def add_poly(c: Fraction, p: Fraction) -> None:
        poly[p] = poly.get(p, Fraction(0)) + c

    for t in raw_terms:
        if isinstance(t, GrossValue):
            for pt in t.poly:
                add_poly(pt.coeff, pt.power)
            for et in t.exp:
                g = et.growth
                exp[g] = exp.get(g, Fraction(0)) + et.coeff
        elif isinstance(t, PolyTerm):
            if t.coeff:
                add_poly(t.coeff, t.power)
        elif isinstance(t, ExpTerm):
            if not t.coeff:
                continue
            c, g = _canonical_exp(t)
            if not c:
                continue
            if g:
                exp[g] = exp.get(g, Fraction(0)) + c
            else:
                add_poly(c, Fraction(0))
        else:
            raise TypeError(f"cannot normalize {type(t).__name__}")
    return _build(poly, exp)


# ---------------------------------------------------------------------------
# arithmetic


def gv_add(x: GrossValue, y: GrossValue) -> GrossValue:
    return gv_normalize([x, y])


def gv_neg(x: GrossValue) -> GrossValue:
    return GrossValue(
        tuple(PolyTerm(-t.coeff, t.power) for t in x.poly),
        tuple(ExpTerm(-t.coeff, t.factors) for t in x.exp),
    )


def gv_mul(x: GrossValue, y: GrossValue) -> GrossValue:
    """Distributive product; mixed ``g**p * r**g`` monomials are rejected."""
    poly: dict[Fraction, Fraction] = {}
    exp: dict[Growth, Fraction] = {}
    for s in x.poly:
        for t in y.poly:
            p = s.power + t.power
            poly[p] = poly.get(p, Fraction(0)) + s.coeff * t.coeff
    for s, t in [(s, t) for s in x.poly for t in y.exp] + [
        (s, t) for s in y.poly for t in x.exp
    ]:
        if s.power != 0:
            raise GrossUnsupported("product of a power of g and an exponential in g")
        g = t.growth
        exp[g] = exp.get(g, Fraction(0)) + s.coeff * t.coeff
    for s in x.exp:
        for t in y.exp:
            merged: dict[int, Fraction] = dict(s.growth)
            for p, a in t.growth:
                merged[p] = merged.get(p, Fraction(0)) + a
            g = tuple(sorted((p, a) for p, a in merged.items() if a))
            c = s.coeff * t.coeff
            if g:
                exp[g] = exp.get(g, Fraction(0)) + c
            else:
                poly[Fraction(0)] = poly.get(Fraction(0), Fraction(0)) + c
    return _build(poly, exp)


def gv_reciprocal(x: GrossValue) -> GrossValue:
    """Exact inverse of a single-term value."""
    terms = x.poly + x.exp
    if not terms:
        raise DomainError("division by zero")
    if len(terms) > 1:
        raise GrossUnsupported(f"cannot invert the multi-term value {render(x)}")
    (t,) = terms
    if isinstance(t, PolyTerm):
        return GrossValue((PolyTerm(1 / t.coeff, -t.power),), ())
    return _build({}, {tuple((p, -a) for p, a in t.growth): 1 / t.coeff})


def _root_exact(c: Fraction, e: Fraction) -> Fraction:
    v = gv_normalize([ExpTerm(1, ((c, GrossLinear(0, e)),))])
    return v.as_rational()


def gv_pow(x: GrossValue, e: GrossLinear) -> GrossValue:
    """``x ** e`` inside the supported fragment."""
    if e.a != 0:
        if not x.is_rational:
            raise GrossUnsupported(f"({render(x)}) raised to the gross exponent {e}")
        base = x.as_rational()
        if base <= 0:
            raise GrossUnsupported(f"nonpositive base {base} raised to a gross exponent")
        return gv_normalize([ExpTerm(1, ((base, e),))])
    if e.b.denominator == 1:
        k = int(e.b)
        if k < 0:
            x, k = gv_reciprocal(x), -k
        result, sq = ONE, x
        while k:
            if k & 1:
                result = gv_mul(result, sq)
            k >>= 1
            if k:
                sq = gv_mul(sq, sq)
        return result
    terms = x.poly + x.exp
    if len(terms) != 1:
        raise GrossUnsupported(f"non-integer power of {render(x) or '0'}")
    (t,) = terms
    if t.coeff < 0:
        raise GrossUnsupported(f"non-integer power of a negative value {render(x)}")
    c = _root_exact(t.coeff, e.b)
    if isinstance(t, PolyTerm):
        return GrossValue((PolyTerm(c, t.power * e.b),), ())
    return _build({}, {tuple((p, a * e.b) for p, a in t.growth): c})


# ---------------------------------------------------------------------------
# order and classification


def _dominant(x: GrossValue) -> PolyTerm | ExpTerm | None:
    if x.exp and _growth_vs_one(x.exp[0].growth) > 0:
        return x.exp[0]
    if x.poly:
        return x.poly[0]
    if x.exp:
        return x.exp[0]
    return None


def gv_sign(x: GrossValue) -> int:
    t = _dominant(x)
    if t is None:
        return 0
    return 1 if t.coeff > 0 else -1


def gv_cmp(x: GrossValue | RationalLike, y: GrossValue | RationalLike) -> Ordering:
    return Ordering(gv_sign(gv_add(_lift(x), gv_neg(_lift(y)))))


def gv_classify(x: GrossValue) -> NumClass:
    t = _dominant(x)
    if t is None:
        return NumClass.ZERO
    if isinstance(t, ExpTerm):
        if _growth_vs_one(t.growth) > 0:
            return NumClass.EXPONENTIALLY_INFINITE
        return NumClass.EXPONENTIALLY_INFINITESIMAL
    if t.power > 0:
        return NumClass.POLYNOMIALLY_INFINITE
    if t.power < 0:
        return NumClass.POLYNOMIALLY_INFINITESIMAL
    return NumClass.FINITE


# ---------------------------------------------------------------------------
# finite instantiation


def gv_substitute(x: GrossValue, n: int) -> Fraction:
    """Exact value of ``x`` with g replaced by the positive integer ``n``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"substitution needs a positive integer, got {n!r}")
    total = Fraction(0)
    for t in x.poly:
        if t.power.denominator != 1:
            raise NonIntegerExponent(f"g^({t.power}) at g={n}")
        total += t.coeff * Fraction(n) ** int(t.power)
    for t in x.exp:
        v = t.coeff
        for p, a in t.growth:
            k = a * n
            if k.denominator != 1:
                raise NonIntegerExponent(f"{p}^({k}) at g={n}")
            v *= Fraction(p) ** int(k)
        total += v
    return total


# ---------------------------------------------------------------------------
# constructors

ZERO = GrossValue()
ONE = GrossValue((PolyTerm(1, 0),), ())
G = GrossValue((PolyTerm(1, 1),), ())


def const(q: RationalLike) -> GrossValue:
    q = _q(q)
    return GrossValue((PolyTerm(q, 0),), ()) if q else ZERO


def rational_power(base: RationalLike, exponent: GrossLinear | RationalLike) -> GrossValue:
    """``base ** exponent`` for a positive rational base."""
    if not isinstance(exponent, GrossLinear):
        exponent = GrossLinear(0, exponent)
    return gv_normalize([ExpTerm(1, ((_q(base), exponent),))])


# ---------------------------------------------------------------------------
# rendering


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render_linear(e: GrossLinear) -> str:
    parts: list[str] = []
    if e.a:
        mag = abs(e.a)
        g = "g" if mag == 1 else f"{_fmt_q(mag)}*g"
        parts.append(("-" if e.a < 0 else "") + g)
    if e.b or not parts:
        if parts:
            parts.append(("-" if e.b < 0 else "+") + _fmt_q(abs(e.b)))
        else:
            parts.append(_fmt_q(e.b))
    return "".join(parts)


def _exp_display(t: ExpTerm) -> tuple[Fraction, Fraction, GrossLinear]:
    """Express a canonical ExpTerm as ``coeff * base ** (a*g + s)``."""
    growth = t.growth
    t_num = math.gcd(*(a.numerator for _, a in growth))
    t_den = math.lcm(*(a.denominator for _, a in growth))
    scale = Fraction(t_num, t_den)
    ints = {p: int(a / scale) for p, a in growth}
    base = Fraction(1)
    for p, k in ints.items():
        base *= Fraction(p) ** k
    valuations = dict(_rational_factors(abs(t.coeff))) if t.coeff != 0 else {}
    candidates = {0}
    for p, k in ints.items():
        v = valuations.get(p, 0)
        candidates.add(math.floor(v / k))
        candidates.add(math.ceil(v / k))
    unit = [s for s in candidates if abs(t.coeff / base**s) == 1]
    best = min(unit, key=abs) if unit else 0
    return t.coeff / base**best, base, GrossLinear(scale, best)


def _render_factor_base(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"({_fmt_q(q)})"


def _render_term(t: PolyTerm | ExpTerm) -> tuple[int, str]:
    """(sign, unsigned text)."""
    if isinstance(t, PolyTerm):
        c, p = t.coeff, t.power
        if p == 0:
            return (1 if c > 0 else -1), _fmt_q(abs(c))
        body = "g" if p == 1 else (f"g^{p.numerator}" if p.denominator == 1 and p > 0 else f"g^({_fmt_q(p)})")
    else:
        c, base, e = _exp_display(t)
        ex = "g" if e == GrossLinear(1, 0) else f"({_render_linear(e)})"
        body = f"{_render_factor_base(base)}^{ex}"
    mag = abs(c)
    text = body if mag == 1 else f"{_fmt_q(mag)}*{body}"
    return (1 if c > 0 else -1), text


def render(x: GrossValue) -> str:
    """Canonical text with ``g`` for grossone; reparses to an equal value."""
    out = ""
    for i, t in enumerate(x.terms()):
        sign, text = _render_term(t)
        if i == 0:
            out = text if sign > 0 else f"-{text}"
        else:
            out += f" + {text}" if sign > 0 else f" - {text}"
    return out or "0"
