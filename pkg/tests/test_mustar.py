"""Critical-exponent localization.

The frozen 20-digit roots below were obtained by running the defect
bisection to width 1e-24 at mp.dps = 50 and rounding; the tests only
assume the digits shown.
"""

from fractions import Fraction

import pytest
from mpmath import mp

from trigpos import mustar
from trigpos.mustar import MuStarResult, defect_integral, mu_star

F = Fraction
mp.dps = 30

# rho -> 20-digit decimal of mu*(rho)
KNOWN_ROOTS = {
    F(2, 3): mp.mpf("0.84685556828952869987"),
    F(1, 3): mp.mpf("0.49669136508129942616"),
}


def test_known_roots_are_enclosed():
    for rho, root in KNOWN_ROOTS.items():
        res = mu_star(rho, width=F(1, 10**9))
        enc = res.enclosure
        assert enc.width <= F(1, 10**9)
        lo = mp.mpf(enc.lo.numerator) / enc.lo.denominator
        hi = mp.mpf(enc.hi.numerator) / enc.hi.denominator
        assert lo < root < hi


def test_boundary_rho_one():
    res = mu_star(F(1))
    assert F(1) in res.enclosure
    # the defect stays negative strictly inside the unit interval
    for mu in ("0.01", "0.35", "0.99"):
        assert defect_integral(F(1), mp.mpf(mu)).value < 0


def test_residual_small_at_default_width():
    res = mu_star(F(2, 3))
    assert abs(res.residual) <= mp.mpf("1e-8")


def test_residual_scales_with_width():
    loose = mu_star(F(1, 3), width=F(1, 10**6))
    tight = mu_star(F(1, 3), width=F(1, 10**12))
    assert abs(tight.residual) < abs(loose.residual)
    assert tight.enclosure.width <= F(1, 10**12)
    # nested localizations agree
    assert tight.enclosure.lo >= loose.enclosure.lo
    assert tight.enclosure.hi <= loose.enclosure.hi


def test_sign_structure_around_root():
    # D(rho, .) changes sign from negative to positive across mu*(rho)
    root = KNOWN_ROOTS[F(2, 3)]
    below = defect_integral(F(2, 3), root - mp.mpf("0.01"))
    above = defect_integral(F(2, 3), root + mp.mpf("0.01"))
    assert below.value < -below.err
    assert above.value > above.err


def test_invalid_inputs():
    with pytest.raises(ValueError):
        mu_star(F(0))
    with pytest.raises(ValueError):
        mu_star(F(3, 2))
    with pytest.raises(ValueError):
        mu_star(F(1, 2), width=F(0))
    with pytest.raises(ValueError):
        defect_integral(F(-1, 3), mp.mpf("0.5"))


def test_cache_returns_identical_object():
    mustar._CACHE.clear()
    a = mu_star(F(2, 3), width=F(1, 10**6))
    b = mu_star(F(2, 3), width=F(1, 10**6))
    assert a is b
    c = mu_star(F(2, 3), width=F(1, 10**7))
    assert c is not a and c.enclosure.width <= F(1, 10**7)


def test_secant_and_pure_bisection_agree():
    mustar._CACHE.clear()
    fast = mu_star(F(2, 3), width=F(1, 10**8), use_secant=True)
    mustar._CACHE.clear()
    slow = mu_star(F(2, 3), width=F(1, 10**8), use_secant=False)
    # both enclose the same root, so the intervals must overlap
    assert fast.enclosure.lo <= slow.enclosure.hi
    assert slow.enclosure.lo <= fast.enclosure.hi


def test_half_of_nu0_rounds_to_published_abbreviation():
    # (1/2) * mu*(1/3): both endpoints of the halved enclosure round to
    # 0.2483 at four decimals (the truncation itself lies outside any
    # faithful enclosure, so rounding is the meaningful comparison)
    res = mu_star(F(1, 3), width=F(1, 10**9))
    for endpoint in (res.enclosure.lo / 2, res.enclosure.hi / 2):
        assert round(float(endpoint), 4) == 0.2483


def test_result_is_frozen_record():
    res = mu_star(F(2, 3))
    assert isinstance(res, MuStarResult)
    with pytest.raises(AttributeError):
        res.rho = F(1, 2)
