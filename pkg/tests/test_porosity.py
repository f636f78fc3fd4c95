from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest

from grossporo.errors import DomainError
from grossporo.geometry import IterationIndex, SpongeQuery
from grossporo.grossone import (
    ONE,
    ZERO,
    GrossLinear,
    NumClass,
    Ordering,
    gv_classify,
    gv_cmp,
    rational_power,
)
from grossporo.porosity import (
    TurcotteSponge,
    porosity_classical,
    porosity_grossone,
    sponge_dimension,
    turcotte_order,
    turcotte_scaling,
)

F = Fraction
fin = IterationIndex.finite
gross = IterationIndex.gross_offset


@pytest.mark.parametrize("n, phi", [(0, F(0)), (1, F(7, 27)), (2, F(329, 729))])
def test_classical_examples(n, phi):
    res = porosity_classical(n)
    assert res.phi == phi
    assert res.solid_volume == F(20, 27) ** n
    assert res.void_volume == 1 - F(20, 27) ** n


def test_classical_domain():
    with pytest.raises(DomainError):
        porosity_classical(-1)


def test_grossone_examples():
    assert porosity_grossone(SpongeQuery(1, fin(1))).phi == 0
    assert porosity_grossone(SpongeQuery(2, fin(2))).phi == F(329, 729)
    phi = porosity_grossone(SpongeQuery(1, gross(0))).phi
    assert phi == 1 - rational_power(F(20, 27), GrossLinear(1, -1))
    assert gv_classify(phi) is NumClass.FINITE


def _all_results():
    for n in range(0, 8):
        yield porosity_classical(n)
    for k in range(1, 5):
        for n in range(k, 9):
            yield porosity_grossone(SpongeQuery(k, fin(n)))
        for m in range(0, 4):
            yield porosity_grossone(SpongeQuery(k, gross(m)))


def test_duality_and_bounds():
    for res in _all_results():
        assert res.phi + res.solid_volume == ONE
        assert res.void_volume + res.solid_volume == ONE
        assert res.phi == res.void_volume
        assert gv_cmp(res.phi, ZERO) is not Ordering.LESS
        assert gv_cmp(res.phi, ONE) is Ordering.LESS


def test_bridge_between_indexings():
    for t in range(0, 51):
        assert porosity_grossone(SpongeQuery(1, fin(t + 1))).phi == porosity_classical(t).phi


def test_porosity_at_infinity_short_of_one():
    at_g = porosity_grossone(SpongeQuery(1, gross(0))).phi
    before = porosity_grossone(SpongeQuery(1, gross(1))).phi
    assert gv_cmp(at_g, ONE) is Ordering.LESS
    assert gv_cmp(at_g, before) is Ordering.GREATER
    assert at_g != ONE


def test_local_window_depends_only_on_sum():
    for total in range(2, 12):
        phis = {porosity_grossone(SpongeQuery(k, fin(total - k))).phi
                for k in range(1, total) if total - k >= k}
        assert len(phis) == 1
    for k in range(1, 5):
        # shifting k up and n down keeps n + k fixed
        assert porosity_grossone(SpongeQuery(k, gross(k))).phi == porosity_grossone(
            SpongeQuery(1, gross(1))).phi


@pytest.mark.parametrize(
    "n, expected",
    [(1, (F(7, 27), F(20, 27))), (2, (F(329, 729), F(400, 729))), (0, (F(0), F(1)))],
)
def test_turcotte_order(n, expected):
    assert turcotte_order(n) == expected


def test_turcotte_order_complement():
    for n in range(0, 30):
        phi, rho = turcotte_order(n)
        assert phi + rho == 1


def test_turcotte_sponge():
    s = TurcotteSponge(r0=2, rho0=F(3, 2))
    assert s.size(2) == 18
    assert s.density(2) == F(3, 2) * F(400, 729)
    assert s.solid_cubes(2) == 400
    with pytest.raises(DomainError):
        TurcotteSponge(r0=0)


def test_sponge_dimension_digits():
    mpmath.mp.dps = 60
    ref = mpmath.log(20) / mpmath.log(3)
    assert abs(mpmath.mpf(str(sponge_dimension(34))) - ref) < mpmath.mpf("1e-33")


@pytest.mark.parametrize("r, expected", [(9, F(329, 729)), (3, F(7, 27)), (1, F(0))])
def test_turcotte_scaling_examples(r, expected):
    phi, ratio = turcotte_scaling(1, r)
    assert abs(F(phi) - expected) < F(1, 10**30)
    assert abs(F(phi) + F(ratio) - 1) < F(1, 10**32)


def test_turcotte_scaling_zero_order_any_dimension():
    for d in ("0.5", "2.1", "2.9"):
        assert turcotte_scaling(1, 1, d)[0] == 0


def test_turcotte_scaling_matches_order():
    d_f = sponge_dimension(34)
    for n in range(0, 21):
        phi, ratio = turcotte_scaling(1, 3**n, d_f, digits=34)
        exact_phi, exact_ratio = turcotte_order(n)
        assert abs(F(phi) - exact_phi) < F(1, 10**12)
        assert abs(F(ratio) - exact_ratio) < F(1, 10**12)


def test_turcotte_scaling_mpmath_oracle():
    mpmath.mp.dps = 50
    phi, _ = turcotte_scaling("1.5", "40", "2.5", digits=30)
    ref = 1 - (mpmath.mpf("1.5") / 40) ** mpmath.mpf("0.5")
    assert abs(mpmath.mpf(str(phi)) - ref) < mpmath.mpf("1e-28")


@pytest.mark.parametrize("r0, r, d", [(2, 1, None), (0, 1, None), (1, 3, "3"), (1, 3, "0"), (1, 3, "-1")])
def test_turcotte_scaling_domain(r0, r, d):
    with pytest.raises(DomainError):
        turcotte_scaling(r0, r, d)
