"""Composite lower bounds and their ingredients.

Frozen values were computed once with the default critical-exponent
enclosure (width 1e-9) at mp.dps = 30 and are pinned to the digits shown;
the tests re-derive them from scratch.
"""

from fractions import Fraction

import pytest
from mpmath import mp

from trigpos.bounds import (
    BoundReport,
    L_region,
    REGIONS,
    delta_tail_bound,
    lemma_XYZ,
    p_factor,
    q_factor,
    scan_neighborhood,
    tail_bounds_AB,
    two_thirds_master_bound,
    wedge,
)
from trigpos.exact import Enclosure

F = Fraction
mp.dps = 30

NU0 = mp.mpf("0.49669136508129942616")

FROZEN_L = {
    "1": mp.mpf("0.259448166766"),
    "2": mp.mpf("0.0106516529274"),
    "31": mp.mpf("0.764115524304"),
    "32": mp.mpf("0.00620342326761"),
    "33": mp.mpf("0.123104696089"),
}


def test_wedge_frozen_and_monotone():
    assert abs(wedge(mp.pi / 8, NU0) - mp.mpf("0.033759144")) < mp.mpf("1e-8")
    assert abs(wedge(mp.pi / 6, NU0) - mp.mpf("0.045888146")) < mp.mpf("1e-8")
    assert abs(wedge(mp.pi / 3, NU0) - mp.mpf("0.10528517")) < mp.mpf("1e-7")
    prev = None
    for k in range(1, 40):
        cur = wedge(k * mp.pi / 41, NU0)
        assert cur > 0
        if prev is not None:
            assert cur > prev
        prev = cur
    with pytest.raises(ValueError):
        wedge(mp.pi, NU0)
    with pytest.raises(ValueError):
        wedge(0, NU0)


def test_tail_bounds_AB():
    theta = mp.pi / 5
    a5, b5 = tail_bounds_AB(NU0, 5, theta)
    a50, b50 = tail_bounds_AB(NU0, 50, theta)
    assert a5 > a50 > 0 and b5 > b50 > 0
    # fixed ratio B/A = (4/3) * theta / sin(theta)
    want = mp.mpf(4) / 3 * theta / mp.sin(theta)
    assert abs(b5 / a5 - want) < mp.mpf("1e-25")
    with pytest.raises(ValueError):
        tail_bounds_AB(NU0, 0, theta)


def test_delta_tail_bound():
    vals = [delta_tail_bound(NU0, n, mp.pi / 5) for n in (1, 5, 50, 500)]
    assert all(v > 0 for v in vals)
    assert vals == sorted(vals, reverse=True)
    with pytest.raises(ValueError):
        delta_tail_bound(mp.mpf("0.2"), 5, mp.pi / 5)  # mu below 1/3
    with pytest.raises(ValueError):
        delta_tail_bound(NU0, 5, mp.pi / 2)  # cutoff not below pi/2
    with pytest.raises(ValueError):
        delta_tail_bound(NU0, 0, mp.pi / 5)


def test_lemma_XYZ():
    x7, y7, z7 = lemma_XYZ(NU0, 7, mp.pi / 8, mp.pi / 3)
    assert abs(x7 - mp.mpf("0.00921789")) < mp.mpf("1e-8")
    assert abs(y7 - mp.mpf("0.0148617")) < mp.mpf("1e-7")
    assert abs(z7 - mp.mpf("0.0495633")) < mp.mpf("1e-7")
    x70, y70, z70 = lemma_XYZ(NU0, 70, mp.pi / 8, mp.pi / 3)
    assert x70 < x7 and y70 < y7 and z70 < z7
    with pytest.raises(ValueError):
        lemma_XYZ(NU0, 7, mp.pi / 3, mp.pi / 8)  # a >= b
    with pytest.raises(ValueError):
        lemma_XYZ(NU0, 0, mp.pi / 8, mp.pi / 3)


def test_p_q_factors():
    # both decrease on (0, pi/5]; q keeps decreasing on all of (0, pi/2)
    grid = [mp.pi / 5 * k / 60 for k in range(1, 61)]
    for f in (p_factor, q_factor):
        vals = [f(phi) for phi in grid]
        assert all(v > 0 for v in vals)
        assert all(a > b for a, b in zip(vals, vals[1:]))
    wide = [mp.pi / 2 * k / 80 for k in range(1, 80)]
    qv = [q_factor(phi) for phi in wide]
    assert all(a > b for a, b in zip(qv, qv[1:]))
    # p is *not* monotone on the wider interval: it turns increasing
    assert p_factor(mp.mpf("1.55")) > p_factor(mp.mpf("1.35"))


def test_L_regions_frozen_positive():
    for region in REGIONS:
        rep = L_region(region)
        assert isinstance(rep, BoundReport)
        assert rep.rho == F(1, 3)
        assert abs(rep.value - FROZEN_L[region]) < mp.mpf("1e-10"), region
        assert rep.err < mp.mpf("1e-10")
        assert rep.positive


def test_L_region_guard():
    with pytest.raises(ValueError):
        L_region("4")


def test_L_region_sensitivity_grows_with_enclosure_width():
    mid = F(49669136508, 10**11)
    tight = L_region("31", nu=Enclosure(mid - F(1, 10**11), mid + F(1, 10**11)))
    wide = L_region("31", nu=Enclosure(mid - F(1, 10**6), mid + F(1, 10**6)))
    assert wide.err > tight.err
    assert abs(wide.value - tight.value) < wide.err + tight.err


def test_master_bound():
    rep = two_thirds_master_bound()
    assert abs(rep.value - mp.mpf("0.207808570447002")) < mp.mpf("1e-11")
    assert rep.err < mp.mpf("1e-10")
    assert rep.positive
    comps = rep.components
    for key in ("prop_term", "chi", "sigma_tail", "tau_tail", "delta_tail"):
        assert key in comps
    recombined = (
        comps["prop_term"]
        + comps["chi"]
        - comps["sigma_tail"]
        - comps["tau_tail"]
        - comps["delta_tail"]
    )
    assert abs(recombined - rep.value) < mp.mpf("1e-25")
    assert comps["chi"] < 0 < comps["prop_term"]


def test_master_bound_with_exact_mu_override():
    rep = two_thirds_master_bound(mu=F(84685556829, 10**11))
    assert rep.positive
    assert abs(rep.value - mp.mpf("0.207808570447002")) < mp.mpf("1e-9")


def test_scan_neighborhood_shape():
    reports = scan_neighborhood("32", steps=1, width=F(1, 10**6))
    assert len(reports) == 3
    rhos = [r.rho for r in reports]
    assert rhos == sorted(rhos)
    assert rhos[1] == F(1, 3)
    assert rhos[0] + rhos[2] == 2 * F(1, 3)
    assert all(r.positive for r in reports)
    only = scan_neighborhood("2", steps=0, width=F(1, 10**6))
    assert len(only) == 1 and only[0].rho == F(1, 3)
    with pytest.raises(ValueError):
        scan_neighborhood("2", steps=-1)
