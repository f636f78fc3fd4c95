"""Fractal water retention curve models and their log-log fits.

Models (``r = (h / h_min) ** (D_f - E)``, ``E = 3``):

========  ======================================
PSF       theta = (theta_s - A) + A * r
TW        theta = theta_s * r
RS        theta = theta_s - 1 + r
========  ======================================

PSF reduces to TW for ``A = theta_s`` and to RS for ``A = 1``.  Heads are in
cm.  Evaluation is plain binary floating point.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DataError, DomainError, FitError, TransformError
from .grossone import GrossValue, gv_substitute

__all__ = [
    "SPONGE_DF",
    "Model",
    "Reduction",
    "WrcParams",
    "RetentionPoint",
    "ThetaValue",
    "Regime",
    "FitResult",
    "theta",
    "theta_eval",
    "partial_porosity",
    "model_reduction",
    "loglog_transform",
    "fit_single",
    "fit_bimodal",
    "head_grid",
    "synthetic_points",
    "read_retention_csv",
    "saturated_content",
]

SPONGE_DF = math.log(20) / math.log(3)

# relative tolerance for parameter identities such as A == theta_s
_PARAM_TOL = 1e-12
_LN10 = math.log(10)


class Model(str, enum.Enum):
    PSF = "psf"
    TW = "tw"
    RS = "rs"


class Reduction(str, enum.Enum):
    TW = "TW"
    RS = "RS"
    GENERAL = "General"


@dataclass(frozen=True)
class WrcParams:
    """Parameters of one retention model.

    ``a`` is only used by PSF; when it is omitted it is derived from the
    pore and solid fractions as ``p / (p + s)``.  ``phi_max`` (RS) defaults
    to ``theta_s``.  ``alpha`` is the capillary length in cm linking pore
    size and head through ``l = alpha / h``.

    ``theta_s <= A <= 1`` is only enforced with ``strict=True``; otherwise
    it is reported by :attr:`a_in_range`.
    """

    model: Model
    theta_s: float
    d_f: float = SPONGE_DF
    h_min: float = 1.0
    h_max: float = math.inf
    a: float | None = None
    p: float | None = None
    s: float | None = None
    alpha: float = 1.0
    phi_max: float | None = None
    strict: bool = False
    e: int = field(default=3, init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "model", Model(self.model))
        object.__setattr__(self, "theta_s", float(self.theta_s))
        if not 0 < self.theta_s <= 1:
            raise DomainError(f"theta_s must lie in (0, 1], got {self.theta_s}")
        if not 0 < self.h_min < self.h_max:
            raise DomainError(f"need 0 < h_min < h_max, got {self.h_min}, {self.h_max}")
        if not 0 < self.d_f < self.e:
            raise DomainError(f"D_f must lie in (0, {self.e}), got {self.d_f}")
        if self.alpha <= 0:
            raise DomainError("alpha must be positive")
        if self.phi_max is None:
            object.__setattr__(self, "phi_max", self.theta_s)
        if self.p is not None or self.s is not None:
            if self.p is None or self.s is None or self.p < 0 or self.s < 0 or self.p + self.s == 0:
                raise DomainError("p and s must both be given, nonnegative, not both zero")
            a_ps = self.p / (self.p + self.s)
            if self.a is None:
                object.__setattr__(self, "a", a_ps)
            elif not math.isclose(self.a, a_ps, rel_tol=_PARAM_TOL, abs_tol=_PARAM_TOL):
                raise DomainError(f"A={self.a} disagrees with p/(p+s)={a_ps}")
        if self.model is Model.PSF:
            if self.a is None:
                raise DomainError("PSF needs A (or p and s)")
            if not 0 < self.a <= 1 + _PARAM_TOL:
                raise DomainError(f"PSF needs 0 < A <= 1, got A={self.a}")
            if self.strict and not self.a_in_range:
                raise DomainError(f"PSF needs theta_s <= A <= 1, got A={self.a}")

    @property
    def a_in_range(self) -> bool:
        """Whether ``theta_s <= A <= 1`` holds."""
        if self.model is not Model.PSF:
            return True
        return self.theta_s - _PARAM_TOL <= self.a <= 1 + _PARAM_TOL

    @property
    def effective_a(self) -> float:
        """The PSF ``A`` this model corresponds to."""
        if self.model is Model.PSF:
            return self.a
        return self.theta_s if self.model is Model.TW else 1.0

    @property
    def l_max(self) -> float:
        return self.alpha / self.h_min

    def with_model(self, model: Model | str) -> WrcParams:
        return replace(self, model=Model(model))


class RetentionPoint(NamedTuple):
    h: float
    theta: float


class ThetaValue(NamedTuple):
    theta: float
    clamped: bool


def _check_head(params: WrcParams, h: float) -> None:
    if not params.h_min <= h <= params.h_max:
        raise DomainError(f"h={h} outside [{params.h_min}, {params.h_max}]")


def theta_eval(params: WrcParams, h: float) -> ThetaValue:
    """Water content at head ``h``; negative values are clamped to 0."""
    _check_head(params, h)
    r = (h / params.h_min) ** (params.d_f - params.e)
    if params.model is Model.PSF:
        value = (params.theta_s - params.a) + params.a * r
    elif params.model is Model.TW:
        value = params.theta_s * r
    else:
        value = params.theta_s - 1 + r
    if value < 0:
        return ThetaValue(0.0, True)
    return ThetaValue(value, False)


def theta(params: WrcParams, h: float) -> float:
    return theta_eval(params, h).theta


def partial_porosity(params: WrcParams, l: float) -> float:
    """Porosity due to pores no larger than ``l`` (TW and RS)."""
    if not 0 < l <= params.l_max * (1 + 1e-15):
        raise DomainError(f"pore size {l} outside (0, {params.l_max}]")
    ratio = min(l / params.l_max, 1.0) ** (params.e - params.d_f)
    if params.model is Model.TW:
        return params.theta_s * ratio
    if params.model is Model.RS:
        return params.phi_max - 1 + ratio
    raise DomainError("partial porosity is defined for the TW and RS models only")


def model_reduction(params: WrcParams, probes: int = 100) -> Reduction:
    """Which special case a PSF parameter set reduces to.

    The result is cross-checked against pointwise equality of theta on
    ``probes`` heads.
    """
    if params.model is not Model.PSF:
        raise DomainError("model_reduction expects PSF parameters")
    if math.isclose(params.a, params.theta_s, rel_tol=_PARAM_TOL, abs_tol=_PARAM_TOL):
        kind = Reduction.TW
    elif math.isclose(params.a, 1.0, rel_tol=_PARAM_TOL, abs_tol=_PARAM_TOL):
        kind = Reduction.RS
    else:
        return Reduction.GENERAL
    other = params.with_model(Model.TW if kind is Reduction.TW else Model.RS)
    hi = params.h_max if math.isfinite(params.h_max) else params.h_min * 1e6
    for h in head_grid(params.h_min, hi, probes):
        if not math.isclose(theta(params, h), theta(other, h), rel_tol=1e-12, abs_tol=1e-12):
            return Reduction.GENERAL
    return kind


def loglog_transform(params: WrcParams, points: Sequence[RetentionPoint]) -> list[tuple[float, float]]:
    """``(log10(h_min/h), log10((theta + A - theta_s) / A))`` per point.

    For exact model data ``y = (3 - D_f) * x``.  TW and RS parameters use
    their equivalent PSF ``A``.
    """
    a = params.effective_a
    out: list[tuple[float, float]] = []
    bad: list[tuple[int, float, float]] = []
    for i, (h, th) in enumerate(points):
        _check_head(params, h)
        rel = (th - params.theta_s) / a
        if rel <= -1:
            bad.append((i, h, th))
            continue
        out.append((math.log10(params.h_min / h), math.log1p(rel) / _LN10))
    if bad:
        listed = ", ".join(f"#{i} (h={h}, theta={t})" for i, h, t in bad)
        raise TransformError(f"nonpositive log argument at {listed}", bad)
    return out


# ---------------------------------------------------------------------------
# fitting


@dataclass(frozen=True)
class Regime:
    d_f: float
    intercept: float
    h_low: float
    h_high: float
    n_points: int

    @property
    def slope(self) -> float:
        return 3.0 - self.d_f


@dataclass(frozen=True)
class FitResult:
    """Fitted scaling regimes in ascending head order."""

    regimes: tuple[Regime, ...]
    breakpoint_h: float | None
    sse: float


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx <= 0 or not math.isfinite(sxx):
        raise FitError("degenerate head spread; cannot fit a slope")
    slope = float(dx @ (y - ym)) / sxx
    intercept = float(ym - slope * xm)
    resid = y - (slope * x + intercept)
    return slope, intercept, float(resid @ resid)


def _prepare(points: Sequence[RetentionPoint], params: WrcParams, minimum: int):
    pts = sorted((RetentionPoint(float(h), float(t)) for h, t in points), key=lambda p: p.h)
    if len(pts) < minimum:
        raise FitError(f"need at least {minimum} points, got {len(pts)}")
    for p, q in zip(pts, pts[1:]):
        if p.h == q.h:
            raise FitError(f"duplicate head h={p.h}")
    xy = np.array(loglog_transform(params, pts), dtype=float)
    return pts, xy[:, 0], xy[:, 1]


def _regime(pts, x, y) -> tuple[Regime, float]:
    slope, intercept, sse = _ols(x, y)
    return Regime(3.0 - slope, intercept, pts[0].h, pts[-1].h, len(pts)), sse


def fit_single(points: Sequence[RetentionPoint], params: WrcParams) -> FitResult:
    """Straight-line fit in log-log space; ``D_f = 3 - slope``."""
    pts, x, y = _prepare(points, params, 3)
    reg, sse = _regime(pts, x, y)
    return FitResult((reg,), None, sse)


def fit_bimodal(points: Sequence[RetentionPoint], params: WrcParams,
                min_side: int = 3) -> FitResult:
    """Two-regime fit by exhaustive breakpoint search.

    Every split leaving at least ``min_side`` points per side is fitted;
    the smallest total SSE wins, ties going to the split nearest the median
    ``x``.  The breakpoint is the lowest head of the upper regime.
    """
    pts, x, y = _prepare(points, params, 2 * min_side)
    n = len(pts)
    sst = float(((y - y.mean()) ** 2).sum())
    tol = 1e-12 * max(sst, 1e-300)
    x_med = float(np.median(x))
    best = None
    for i in range(min_side, n - min_side + 1):
        left, sse_l = _regime(pts[:i], x[:i], y[:i])
        right, sse_r = _regime(pts[i:], x[i:], y[i:])
        total = sse_l + sse_r
        split_x = 0.5 * (x[i - 1] + x[i])
        cand = (total, abs(split_x - x_med), i, left, right)
        if best is None or total < best[0] - tol or (
            abs(total - best[0]) <= tol and cand[1] < best[1]
        ):
            best = cand
    total, _, i, left, right = best
    return FitResult((left, right), pts[i].h, total)


# ---------------------------------------------------------------------------
# data helpers


def head_grid(lo: float, hi: float, steps: int, spacing: str = "log") -> list[float]:
    """``steps`` heads from ``lo`` to ``hi`` inclusive."""
    if steps < 2:
        raise DomainError("a head grid needs at least 2 steps")
    if not 0 < lo < hi:
        raise DomainError(f"need 0 < lo < hi, got {lo}, {hi}")
    if spacing == "log":
        grid = np.geomspace(lo, hi, steps)
    elif spacing == "linear":
        grid = np.linspace(lo, hi, steps)
    else:
        raise DomainError(f"unknown spacing {spacing!r}")
    grid[0], grid[-1] = lo, hi
    return [float(h) for h in grid]


def synthetic_points(params: WrcParams, heads: Sequence[float]) -> list[RetentionPoint]:
    return [RetentionPoint(h, theta(params, h)) for h in heads]


def read_retention_csv(path: str | Path) -> list[RetentionPoint]:
    """Read ``h,theta`` rows; every malformed row is reported by number."""
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8")
    except FileNotFoundError:
        raise DataError(f"file not found: {path}") from None
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip().lower() for c in header] != ["h", "theta"]:
            raise DataError(f"{path}: header must be 'h,theta'")
        points: list[RetentionPoint] = []
        problems: list[str] = []
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                if len(row) != 2:
                    raise ValueError("expected 2 columns")
                h, t = float(row[0]), float(row[1])
                if not (math.isfinite(h) and math.isfinite(t)):
                    raise ValueError("non-finite value")
                if h <= 0 or not 0 <= t <= 1:
                    raise ValueError("need h > 0 and 0 <= theta <= 1")
            except ValueError as exc:
                problems.append(f"row {row_no}: {exc}")
                continue
            points.append(RetentionPoint(h, t))
    if problems:
        raise DataError(f"{path}: " + "; ".join(problems))
    return points


def saturated_content(phi: GrossValue | Fraction, at: int | None = None) -> float:
    """Porosity as a ``theta_s`` value.

    Gross porosities are instantiated at ``g = at`` first.
    """
    if isinstance(phi, GrossValue):
        if phi.is_rational:
            phi = phi.as_rational()
        elif at is None:
            raise DomainError("gross porosity needs a finite instantiation point")
        else:
            phi = gv_substitute(phi, at)
    return float(phi)
