"""Acceptance criteria AC1 to AC10, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line for each.
"""

import csv
import io
import math
import random
import time
from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest

from grossporo.cli import run
from grossporo.geometry import (
    FractalObject,
    IterationIndex,
    SpongeQuery,
    carpet_geometry,
    fractal_dimension,
    menger_geometry,
)
from grossporo.grossone import (
    G,
    ONE,
    ZERO,
    ExpTerm,
    GrossLinear,
    NumClass,
    Ordering,
    PolyTerm,
    gv_classify,
    gv_cmp,
    gv_normalize,
    gv_substitute,
    render,
)
from grossporo.parser import parse
from grossporo.porosity import (
    porosity_classical,
    porosity_grossone,
    turcotte_order,
    turcotte_scaling,
)
from grossporo.wrc import (
    SPONGE_DF,
    Reduction,
    RetentionPoint,
    WrcParams,
    fit_bimodal,
    head_grid,
    model_reduction,
    theta,
)

criterion = pytest.mark.criterion


@criterion("AC1", "exact classical and Turcotte fractions")
def test_ac1_exact_fractions():
    assert porosity_classical(1).phi.as_rational() == Fraction(7, 27)
    assert porosity_classical(2).phi.as_rational() == Fraction(329, 729)
    assert turcotte_order(1)[1] == Fraction(20, 27)
    assert turcotte_order(2)[1] == Fraction(400, 729)


@criterion("AC2", "sponge dimension to 9 places")
def test_ac2_fractal_dimension():
    assert str(fractal_dimension(FractalObject.SPONGE, 9)) == "2.726833028"


@criterion("AC3", "gross volume chain")
def test_ac3_volume_chain():
    start = time.perf_counter()
    vols = [menger_geometry(SpongeQuery(1, IterationIndex.gross_offset(m))).volume for m in range(3)]
    assert vols[0] == parse("(20/27)^(g-1)")
    assert render(vols[0]) == "(20/27)^(g-1)"
    for later, earlier in zip(vols, vols[1:]):
        assert (later / earlier).as_rational() == Fraction(20, 27)
    assert gv_classify(vols[0]) is NumClass.EXPONENTIALLY_INFINITESIMAL
    assert gv_cmp(vols[0], ZERO) is Ordering.GREATER
    assert time.perf_counter() - start < 0.1


@criterion("AC4", "grossone indexing matches classical for t = 0..50")
def test_ac4_indexing_bridge():
    for t in range(51):
        gross = porosity_grossone(SpongeQuery(1, IterationIndex.finite(t + 1)))
        assert gross.phi == porosity_classical(t).phi


@criterion("AC5", "finite instantiation of V, A, phi")
def test_ac5_instantiation_oracle():
    rng = random.Random(20251019)
    for _ in range(200):
        k, m = rng.randint(1, 5), rng.randint(0, 5)
        t = rng.randint(m + k, max(m + k, 30))
        q = SpongeQuery(k, IterationIndex.gross_offset(m))
        e = t - m + k - 2
        assert gv_substitute(menger_geometry(q).volume, t) == Fraction(20, 27) ** e
        assert gv_substitute(carpet_geometry(q).area, t) == Fraction(8, 9) ** e
        assert gv_substitute(porosity_grossone(q).phi, t) == 1 - Fraction(20, 27) ** e


@criterion("AC6", "Turcotte power law agrees with exact orders")
def test_ac6_turcotte_consistency():
    d_f = Decimal(20).ln() / Decimal(3).ln()
    for n in range(21):
        phi, ratio = turcotte_scaling(1, 3**n, d_f, digits=34)
        exact_phi, exact_ratio = turcotte_order(n)
        assert abs(Fraction(phi) - exact_phi) <= Fraction(1, 10**12)
        assert abs(Fraction(ratio) - exact_ratio) <= Fraction(1, 10**12)


@criterion("AC7", "log-log slope of the PSF curve is 3 - D")
def test_ac7_loglog_slope():
    start = time.perf_counter()
    report = run(["wrc-eval", "--theta-s", "0.5", "--a", "0.45", "--h-min", "1",
                  "--h-grid", "1:10000:200", "--loglog", "-o", "csv"])
    assert report.exit_code == 0, report.errors
    rows = list(csv.DictReader(io.StringIO(report.output)))
    x = np.array([float(r["log_hmin_over_h"]) for r in rows])
    y = np.array([float(r["log_scaled_theta"]) for r in rows])
    slope = np.polyfit(x, y, 1)[0]
    assert abs(slope - (3 - SPONGE_DF)) <= 1e-9
    assert time.perf_counter() - start < 1.0


@criterion("AC8", "bimodal fit recovers breakpoint and dimensions")
def test_ac8_bimodal_recovery():
    start = time.perf_counter()
    base = dict(model="psf", theta_s=0.5, a=0.45)
    lower, upper = WrcParams(**base, d_f=2.9), WrcParams(**base, d_f=2.5)
    heads = [10 ** (i / 10) for i in range(30)]
    points = [RetentionPoint(h, theta(lower if h < 10 else upper, h)) for h in heads]
    fit = fit_bimodal(points, WrcParams(**base))
    assert fit.breakpoint_h == 10.0
    assert abs(fit.regimes[0].d_f - 2.9) <= 1e-6
    assert abs(fit.regimes[1].d_f - 2.5) <= 1e-6
    assert time.perf_counter() - start < 1.0


@criterion("AC9", "PSF reduces to TW and RS pointwise")
def test_ac9_reductions():
    grid = head_grid(1, 1e6, 1000)
    for d_f in (2.1, SPONGE_DF, 2.9):
        tw = WrcParams("psf", 0.4, a=0.4, d_f=d_f)
        rs = WrcParams("psf", 0.4, a=1.0, d_f=d_f)
        assert model_reduction(tw) is Reduction.TW
        assert model_reduction(rs) is Reduction.RS
        for psf, other in ((tw, tw.with_model("tw")), (rs, rs.with_model("rs"))):
            worst = max(abs(theta(psf, h) - theta(other, h)) for h in grid)
            assert worst <= 1e-12


def _random_value(rng, closed=False):
    """Random canonical value; ``closed`` keeps products free of mixed terms."""
    q = lambda: Fraction(rng.choice([i for i in range(-9, 10) if i]), rng.choice([1, 2, 3]))
    terms = []
    if closed:
        terms.append(PolyTerm(q(), Fraction(0)))
        for _ in range(rng.randint(0, 2)):
            a = Fraction(rng.randint(-3, 3), 2)
            terms.append(ExpTerm(q(), ((Fraction(rng.choice([2, 3, 5])), GrossLinear(a, 0)),)))
    else:
        for _ in range(rng.randint(1, 3)):
            terms.append(PolyTerm(q(), Fraction(rng.randint(-2, 3))))
    return gv_normalize(terms)


@criterion("AC10", "grossone property suite, 1000+ random cases")
def test_ac10_property_suite():
    start = time.perf_counter()
    rng = random.Random(7)
    cases = 0
    for i in range(400):
        closed = i % 2 == 0
        x, y, z = (_random_value(rng, closed) for _ in range(3))
        # normalization and round trip
        assert gv_normalize([x]) == x
        assert parse(render(x)) == x
        # ring laws
        assert x + y == y + x and x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + ZERO == x and x * ONE == x and x - x == ZERO
        # order
        assert gv_cmp(x, y) == -gv_cmp(y, x)
        if gv_cmp(x, y) <= 0 and gv_cmp(y, z) <= 0:
            assert gv_cmp(x, z) <= 0
        assert (gv_cmp(x, y) is Ordering.EQUAL) == (x == y)
        cases += 1
    for m in range(100):
        assert gv_cmp(G - m, G - (m + 1)) is Ordering.GREATER
        assert gv_cmp(G - (m + 1), m) is Ordering.GREATER
        assert gv_cmp(G - m, G) is (Ordering.LESS if m else Ordering.EQUAL)
        cases += 1
    for n in rng.sample(range(1, 10**9), 600):
        assert gv_cmp(G, n) is Ordering.GREATER
        cases += 1
    assert cases >= 1000
    assert time.perf_counter() - start < 30
