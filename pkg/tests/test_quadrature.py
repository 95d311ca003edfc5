"""Singular oscillatory quadrature: dual-route checks and frozen oracles.

Every quadrature value is checked against the termwise-integrated power
series, which shares no code with the Gauss-Legendre path.  Frozen
constants below were produced by the series route at mp.dps = 50 and
rounded to the digits shown.
"""

import random

import pytest
from mpmath import mp

from trigpos.quadrature import (
    QuadResult,
    chi_reference_integral,
    fractional_osc_integral,
    frak_K,
    min_over_upper_limit,
    series_reference,
)

mp.dps = 30

NU0 = mp.mpf("0.49669136508129942616")
MU23 = mp.mpf("0.84685556828952869987")

# frozen reference values for integral_0^x g(t) t^(mu-1) dt
FROZEN = [
    ("sin", NU0, 2 * mp.pi, mp.mpf("0.864878993147")),
    ("cos", NU0, 7 * mp.pi / 4, mp.mpf("0.949336332076")),
    ("sin", NU0, mp.pi, mp.mpf("1.78904140403")),
    ("cos", NU0, mp.pi, mp.mpf("1.34063338747")),
    ("sin", MU23, mp.pi, mp.mpf("1.91201322772")),
    ("cos", MU23, mp.pi, mp.mpf("0.300957342747")),
]


def test_dual_route_agreement_zero_phase():
    for kind in ("sin", "cos"):
        for mu in (mp.mpf("0.3"), NU0, MU23):
            for x in (mp.mpf("0.1"), mp.mpf(1), mp.pi, 2 * mp.pi):
                quad = fractional_osc_integral(kind, 0, mu, x)
                ser = series_reference(kind, mu, x)
                assert not quad.flagged
                assert abs(quad.value - ser) <= quad.err + mp.mpf("1e-24")


def test_dual_route_agreement_shifted_phase():
    eta = -mp.pi / 10
    for kind in ("sin", "cos"):
        for x in (mp.mpf("0.5"), mp.pi, 8 * mp.pi / 5):
            quad = fractional_osc_integral(kind, eta, MU23, x)
            ser = series_reference(kind, MU23, x, eta)
            assert abs(quad.value - ser) <= quad.err + mp.mpf("1e-24")


def test_dual_route_randomized():
    rng = random.Random(9)
    for _ in range(25):
        kind = rng.choice(("sin", "cos"))
        mu = mp.mpf(rng.uniform(0.05, 1.0))
        x = mp.mpf(rng.uniform(0.05, 4 * 3.14159))
        eta = mp.mpf(rng.uniform(-3.14, 3.14))
        quad = fractional_osc_integral(kind, eta, mu, x)
        ser = series_reference(kind, mu, x, eta)
        assert abs(quad.value - ser) <= quad.err + mp.mpf("1e-22"), (kind, mu, x, eta)


def test_frozen_endpoint_values():
    for kind, mu, x, want in FROZEN:
        quad = fractional_osc_integral(kind, 0, mu, x)
        assert abs(quad.value - want) < mp.mpf("1e-11")
        # and the independent route agrees with the same frozen digits
        assert abs(series_reference(kind, mu, x) - want) < mp.mpf("1e-11")


def test_mu_one_elementary_antiderivative():
    # at mu = 1 the weight disappears and the integral is elementary:
    # int_0^x sin(t + eta) dt = cos(eta) - cos(x + eta), similarly for cos
    for x in (mp.mpf("0.7"), mp.pi, 3 * mp.pi / 2):
        for eta in (mp.mpf(0), -mp.pi / 10, mp.mpf("1.1")):
            s = fractional_osc_integral("sin", eta, 1, x)
            assert abs(s.value - (mp.cos(eta) - mp.cos(x + eta))) < mp.mpf("1e-24")
            c = fractional_osc_integral("cos", eta, 1, x)
            assert abs(c.value - (mp.sin(x + eta) - mp.sin(eta))) < mp.mpf("1e-24")


def test_tolerance_is_honored():
    loose = fractional_osc_integral("sin", 0, NU0, 2 * mp.pi, tol=mp.mpf("1e-8"))
    tight = fractional_osc_integral("sin", 0, NU0, 2 * mp.pi, tol=mp.mpf("1e-20"))
    assert loose.err <= mp.mpf("1e-8") and not loose.flagged
    assert tight.err <= mp.mpf("1e-20") and not tight.flagged
    assert abs(loose.value - tight.value) <= loose.err + tight.err


def test_quadresult_scaled():
    r = QuadResult(mp.mpf(2), mp.mpf("0.5"), False)
    s = r.scaled(-3)
    assert s.value == -6 and s.err == mp.mpf("1.5") and s.flagged is False


def test_input_guards():
    with pytest.raises(ValueError):
        fractional_osc_integral("tan", 0, NU0, 1)
    with pytest.raises(ValueError):
        fractional_osc_integral("sin", 0, mp.mpf("1.5"), 1)
    with pytest.raises(ValueError):
        fractional_osc_integral("sin", 0, NU0, 0)
    with pytest.raises(ValueError):
        series_reference("sin", NU0, 4 * mp.pi + mp.mpf("0.1"))
    with pytest.raises(ValueError):
        series_reference("cos", mp.mpf(0), 1)
    with pytest.raises(ValueError):
        frak_K(mp.pi / 2 + mp.mpf("0.01"), mp.pi, mp.mpf(1) / 3, NU0)
    with pytest.raises(ValueError):
        frak_K(0, mp.pi, mp.mpf(1) / 3, NU0)


def test_frak_K_frozen_values():
    rho = mp.mpf(1) / 3
    k1 = frak_K(mp.pi / 12, mp.pi, rho, NU0)
    assert abs(k1.value - mp.mpf("0.278304816973")) < mp.mpf("1e-11")
    k2 = frak_K(mp.pi / 6, (1 + 5 * rho / 6) * mp.pi, rho, NU0)
    assert abs(k2.value - mp.mpf("-0.630108835832")) < mp.mpf("1e-11")
    k3 = frak_K(mp.pi / 3, 3 * mp.pi / 2, rho, NU0)
    assert abs(k3.value - mp.mpf("-0.538433237269")) < mp.mpf("1e-11")


def test_frak_K_matches_direct_definition():
    # recompute through the raw integral with the phase assembled by hand
    rho = mp.mpf(1) / 3
    b = mp.pi / 6
    x = mp.mpf("2.2")
    eta = rho * b - (rho - mp.mpf(1) / 2) * mp.pi
    direct = fractional_osc_integral("cos", eta, NU0, x)
    viak = frak_K(b, x, rho, NU0)
    assert abs(viak.value - direct.value / mp.sin(b)) <= viak.err + direct.err


def test_chi_reference_value():
    chi = chi_reference_integral(MU23)
    assert abs(chi.value - mp.mpf("-0.32126981902369")) < mp.mpf("1e-13")
    assert chi.value < 0


def test_chi_argmin_is_eight_pi_fifths():
    argmin, best = min_over_upper_limit("cos", -mp.pi / 10, MU23, mp.pi)
    assert abs(argmin - 8 * mp.pi / 5) < mp.mpf("1e-25")
    # the scaled minimum reproduces the chi constant
    chi = chi_reference_integral(MU23)
    assert abs(best.value / mp.sin(mp.pi / 5) - chi.value) <= (
        best.err / mp.sin(mp.pi / 5) + chi.err
    )


def test_min_over_upper_limit_beats_samples():
    rng = random.Random(31)
    for kind, eta, x_min in (
        ("cos", -mp.pi / 10, mp.pi),
        ("sin", mp.mpf(0), mp.pi / 2),
        ("cos", mp.pi / 7, mp.mpf(1)),
    ):
        argmin, best = min_over_upper_limit(kind, eta, MU23, x_min)
        assert argmin >= x_min
        for _ in range(12):
            x = x_min + mp.mpf(rng.uniform(0.0, 12.0))
            probe = fractional_osc_integral(kind, eta, MU23, x)
            assert best.value <= probe.value + best.err + probe.err + mp.mpf("1e-20")


def test_min_over_upper_limit_guard():
    with pytest.raises(ValueError):
        min_over_upper_limit("sin", 0, NU0, 0)
    with pytest.raises(ValueError):
        min_over_upper_limit("cot", 0, NU0, 1)
