"""Trig sums, Chebyshev reductions, and the named case polynomials."""

import random
from fractions import Fraction

import pytest
from mpmath import mp

from trigpos.exact import Enclosure
from trigpos.trigsums import (
    TrigSum,
    TrigTerm,
    build_ell,
    build_omega,
    build_U_n,
    build_varsigma,
    case_P,
    case_q,
    case_Q,
    case_R,
    chebyshev_T,
    chebyshev_U,
    pochhammer_coeff,
    reduce_to_polynomial,
    run_sturm_target,
    sturm_case_plan,
)

F = Fraction
mp.dps = 30

# rational stand-in for the rho = 2/3 critical exponent; the P/Q/R root-count
# claims hold at (and near) this value, not for generic mu
MU_23 = F(84685556829, 10**11)


def _poly_mp(poly, x):
    acc = mp.mpf(0)
    for c in reversed(poly.coeffs):
        acc = acc * x + mp.mpf(c.numerator) / c.denominator
    return acc


def test_pochhammer_exact_values():
    mu = F(1, 2)
    assert pochhammer_coeff(mu, 0).lo == 1
    assert pochhammer_coeff(mu, 1).lo == F(1, 2)
    assert pochhammer_coeff(mu, 2).lo == F(1, 2) * F(3, 2) / 2
    assert pochhammer_coeff(mu, 3).lo == F(1, 2) * F(3, 2) * F(5, 2) / 6


def test_pochhammer_interval_is_monotone_envelope():
    enc = Enclosure(F(2, 5), F(1, 2))
    for k in range(6):
        c = pochhammer_coeff(enc, k)
        lo_val = pochhammer_coeff(F(2, 5), k).lo
        hi_val = pochhammer_coeff(F(1, 2), k).lo
        assert c.lo == lo_val and c.hi == hi_val
        assert c.lo <= c.hi


def test_pochhammer_rejects_nonpositive_interval():
    with pytest.raises(ValueError):
        pochhammer_coeff(Enclosure(F(-1, 2), F(1, 2)), 2)


def test_chebyshev_identities_at_random_angles():
    rng = random.Random(2024)
    for _ in range(30):
        k = rng.randint(0, 9)
        t = mp.mpf(rng.random()) * mp.pi
        x = mp.cos(t)
        tk = chebyshev_T(k)
        # T_k(cos t) = cos(k t)
        val = _poly_mp(tk, x)
        assert abs(val - mp.cos(k * t)) < 1e-22
        uk = chebyshev_U(k)
        # sin t * U_k(cos t) = sin((k+1) t)
        val = _poly_mp(uk, x)
        assert abs(mp.sin(t) * val - mp.sin((k + 1) * t)) < 1e-22


def test_build_U_n_matches_direct_sum():
    mu = F(4, 5)
    s = build_U_n(3, mu)
    for j in range(1, 8):
        phi = mp.pi / 2 * j / 7
        direct = mp.mpf(0)
        d = mp.mpf(1)
        for k in range(4):
            direct += d * mp.cos((2 * k + mp.mpf(1) / 3) * phi - mp.pi / 6)
            d *= (mp.mpf(4) / 5 + k) / (k + 1)
        assert abs(s.eval_mp(phi) - direct) < 1e-25


def test_ell_is_varsigma_reflected():
    rho, mu = F(1, 3), F(1, 2)
    vs = build_varsigma(4, rho, mu)
    el = build_ell(4, rho, mu)
    for j in range(1, 10):
        theta = mp.pi * j / 10
        assert abs(el.eval_mp(theta) - vs.eval_mp(mp.pi - theta)) < 1e-25


def test_substitute_theta_is_exact():
    s = build_varsigma(2, F(1, 3), F(1, 2))
    inner = s.substitute_theta(F(3), F(0))  # theta = 3 t
    for j in range(1, 6):
        t = mp.mpf(j) / 7
        assert abs(inner.eval_mp(t) - s.eval_mp(3 * t)) < 1e-25


def test_reduce_pure_sine_sum():
    s = TrigSum((
        TrigTerm(Enclosure.exact(1), F(1), F(0), "sin"),
        TrigTerm(Enclosure.exact(F(1, 3)), F(3), F(0), "sin"),
    ))
    red = reduce_to_polynomial(s, "x = cos t")
    assert red.prefactor == "sin(t)"
    poly = red.exact_polynomial()
    for j in range(1, 8):
        t = mp.mpf(j) / 3
        x = mp.cos(t)
        pv = _poly_mp(poly, x)
        assert abs(mp.sin(t) * pv - s.eval_mp(t)) < 1e-24


def test_reduce_mixed_flavors_rejected():
    s = TrigSum((
        TrigTerm(Enclosure.exact(1), F(1), F(0), "sin"),
        TrigTerm(Enclosure.exact(1), F(2), F(0), "cos"),
    ))
    with pytest.raises(ValueError):
        reduce_to_polynomial(s, "x = cos t")


def test_reduce_fractional_frequency_rejected():
    s = TrigSum((TrigTerm(Enclosure.exact(1), F(1, 3), F(0), "sin"),))
    with pytest.raises(ValueError):
        reduce_to_polynomial(s, "x = cos t")


def test_omega_reduction_in_squared_cosine():
    # omega_n = sin(theta/3) q_n(cos^2(theta/3)) for n = 1, 2
    for n in (1, 2, 3):
        red = case_q(n)
        assert red.prefactor == "sin(theta/3)"
        qn = red.exact_polynomial()
        om = build_omega(n)
        for j in range(1, 9):
            theta = 3 * mp.mpf(j) / 10
            x = mp.cos(theta / 3) ** 2
            pv = _poly_mp(qn, x)
            assert abs(mp.sin(theta / 3) * pv - om.eval_mp(theta)) < 1e-24


def test_case_P_at_special_point_is_negative_identity():
    # P at t = -pi/3 (x = 1/2) collapses to -d2/2 = -mu(mu+1)/4 exactly
    for mu in (F(1, 2), F(4, 5), F(9, 10), F(123, 1000)):
        red = case_P(mu)
        poly = red.exact_polynomial()
        assert poly(F(1, 2)) == -mu * (mu + 1) / 4


def test_case_P_at_zero():
    # P at t = 0 (x = 1): all cosines are 1, so P(0) = 2 - 2 d1 = 2(1 - mu)
    for mu in (F(1, 2), F(4, 5)):
        poly = case_P(mu).exact_polynomial()
        assert poly(F(1)) == 2 - 2 * mu


def test_case_Q_R_match_their_sums():
    mu = F(4, 5)
    for red, orders in ((case_Q(mu), (1, 7, 13)), (case_R(mu), (1, 7, 13, 19))):
        poly = red.exact_polynomial()
        for j in range(1, 7):
            t = mp.mpf(j) / 5
            x = mp.cos(t)
            pv = _poly_mp(poly, x)
            direct = mp.mpf(0)
            d = mp.mpf(1)
            for k, m in enumerate(orders):
                direct += d * mp.sin(m * t)
                d *= (mp.mpf(4) / 5 + k) / (k + 1)
            assert abs(mp.sin(t) * pv - direct) < 1e-24


def test_sturm_plan_counts_are_all_zero():
    plan = sturm_case_plan(MU_23)
    outcomes = {t.name: run_sturm_target(t) for t in plan}
    assert set(outcomes) == {
        "q1", "q2", "q3", "q3-derived", "P-near-0", "P-mid", "Q", "R",
    }
    for out in outcomes.values():
        assert all(c == 0 for c in out.root_counts), out.name


def test_sturm_plan_point_results():
    plan = sturm_case_plan(F(4, 5))
    outcomes = {t.name: run_sturm_target(t) for t in plan}
    # every labeled point passes except the one that is negative identically
    for out in outcomes.values():
        for label, ok in out.point_results:
            if label == "P(-pi/3)":
                assert not ok
            else:
                assert ok, (out.name, label)
    assert not outcomes["P-near-0"].passed
    assert outcomes["P-mid"].passed
    assert outcomes["q3"].passed


def test_sturm_plan_with_enclosure_mu_gives_envelope_pairs():
    enc = Enclosure(F(84685, 100000), F(84686, 100000))
    plan = {t.name: t for t in sturm_case_plan(enc)}
    out = run_sturm_target(plan["Q"])
    assert len(out.root_counts) == 2
    assert out.root_counts == (0, 0)


def test_exact_mu_gives_single_polynomial():
    plan = {t.name: t for t in sturm_case_plan(F(4, 5))}
    out = run_sturm_target(plan["P-mid"])
    assert len(out.root_counts) == 1


def test_coeff_err_and_lipschitz():
    enc = Enclosure(F(1, 2), F(3, 5))
    s = TrigSum((
        TrigTerm(enc, F(7), F(0), "sin"),
        TrigTerm(Enclosure.exact(F(-1, 4)), F(2), F(1, 2), "cos"),
    ))
    assert s.coeff_err() == (F(3, 5) - F(1, 2)) / 2
    assert s.lipschitz() == F(3, 5) * 7 + F(1, 4) * 2
