import math

import mpmath as mp
import numpy as np
import pytest

from suffpoly.numkit import Polynomial, find_roots
from suffpoly.suffridge import constants, derivative_factor_a, s4_coeffs
from suffpoly.univalence import (Method, UnivalenceConfig, Verdict, boundary_curve, fgamma,
                                 fgamma_sweep, find_self_intersections, leading_coeff_bound,
                                 quasi_extremal_check, recognize_s4, univalence_verdict)

Z_PLUS_Z2 = Polynomial([0, 1, 1])
Z_PLUS_03Z4 = Polynomial([0, 1, 0, 0, 0.3])


# -- boundary curve ----------------------------------------------------------

def test_boundary_curve_identity():
    c = boundary_curve(Polynomial([0, 1]), 4)
    np.testing.assert_allclose(c.points, [1, 1j, -1, -1j], atol=1e-15)
    angles = [a for a, _ in c]
    assert angles == pytest.approx([0, math.pi / 2, math.pi, 3 * math.pi / 2])
    assert len(c) == 4


def test_boundary_curve_z_plus_z2_passes_minus_one_twice():
    for x in (2 * math.pi / 3, 4 * math.pi / 3):
        assert abs(Z_PLUS_Z2(np.exp(1j * x)) + 1) < 1e-15
    c = boundary_curve(Z_PLUS_Z2, 4096)
    step = 2 * math.pi / 4096 * 3  # |P'| <= 3 on the circle
    for x in (2 * math.pi / 3, 4 * math.pi / 3):
        near = np.abs(c.angles - x) < 2 * math.pi / 4096
        assert np.min(np.abs(c.points[near] + 1)) < step


def test_self_intersections_identity_empty():
    assert find_self_intersections(boundary_curve(Polynomial([0, 1]), 1024)) == []


def test_self_intersections_z_plus_z2():
    w = find_self_intersections(boundary_curve(Z_PLUS_Z2, 4096))
    assert len(w) == 1
    assert w[0].kind == "crossing"
    assert (w[0].x, w[0].y) == pytest.approx((4 * math.pi / 3, 2 * math.pi / 3), abs=1e-10)
    assert w[0].image_distance < 1e-12


def test_self_intersections_s41_simple():
    assert find_self_intersections(boundary_curve(s4_coeffs(1), 4096)) == []


def test_s4_boundary_has_only_contacts():
    # The boundary image of S_4^(T) touches itself at T points, where
    # x, y = pi/T +- 2 pi/(3T+2) (up to rotation by 2 pi/T); it never crosses.
    for T in (2, 3, 5):
        w = find_self_intersections(boundary_curve(s4_coeffs(T), 8192))
        assert all(x.kind == "contact" for x in w)
        p = s4_coeffs(T)
        x = math.pi / T + 2 * math.pi / (3 * T + 2)
        y = math.pi / T - 2 * math.pi / (3 * T + 2)
        assert abs(p(np.exp(1j * x)) - p(np.exp(1j * y))) < 1e-13


# -- necessary conditions ----------------------------------------------------

def test_leading_coeff_bound():
    assert not leading_coeff_bound(Z_PLUS_03Z4)
    assert leading_coeff_bound(Polynomial([0, 1, 0.1]))
    for T in range(1, 51):
        p = s4_coeffs(T)
        assert leading_coeff_bound(p)
        assert abs(p.leading) == pytest.approx(1 / (3 * T + 1), abs=1e-16)
    # normalization by the linear coefficient
    assert not leading_coeff_bound(Polynomial([0, 2, 0, 0, 0.6]))
    with pytest.raises(ValueError):
        leading_coeff_bound(Polynomial([1.0]))
    with pytest.raises(ValueError):
        leading_coeff_bound(Polynomial([0, 0, 1]))


# -- f_gamma sections --------------------------------------------------------

def test_fgamma_quadratic_branch():
    s = fgamma(3, math.pi / 10)
    assert s.coeffs[0] == 1.0
    assert s.degenerate and s.degree == 2
    prod = np.prod(np.abs(s.roots()))
    expected = 10 * math.sin(math.pi / 10) / (constants(3).v_T * math.sin(7 * math.pi / 10))
    assert prod == pytest.approx(expected, abs=1e-12)
    assert prod == pytest.approx(1.3349, abs=1e-4)


def test_fgamma_limit_at_zero():
    T = 3
    a = constants(T).a_T
    lim = (2 * T + 1) * (T + 1) * a / (3 * T + 1)
    c = fgamma(T, 1e-9).coeffs
    assert c[1] == pytest.approx(lim, rel=1e-6)
    assert c[2] == pytest.approx(lim, rel=1e-6)
    assert c[3] == pytest.approx(1.0, rel=1e-6)
    assert lim == pytest.approx(2.0030, abs=1e-4)
    with pytest.raises(ValueError):
        fgamma(3, 0.0)


def test_fgamma_against_mp_oracle():
    T, g = 5, 0.731
    a = mp.sin(2 * mp.pi / (3 * T + 2)) / mp.sin(T * mp.pi / (3 * T + 2))
    m = 3 * T + 1
    s = mp.sin(g)
    ref = [1, (2 * T + 1) * a / m * mp.sin((T + 1) * g) / s,
           (T + 1) * a / m * mp.sin((2 * T + 1) * g) / s, mp.sin(m * g) / (m * s)]
    np.testing.assert_allclose(fgamma(T, g).coeffs, [float(v) for v in ref], atol=1e-15)


def test_quadratic_branch_product_bound():
    for T in range(3, 41):
        m = 3 * T + 1
        for k in range(1, m):
            s = fgamma(T, k * math.pi / m)
            assert s.degenerate
            assert np.prod(np.abs(s.roots())) > m / (3 * T) - 1e-12


def test_fgamma_never_has_middle_coefficient_zero_at_degenerate_points():
    for T in range(1, 30):
        m = 3 * T + 1
        for k in range(1, m):
            assert abs(math.sin((2 * T + 1) * k * math.pi / m)) > 1e-3


# -- sweep -------------------------------------------------------------------

@pytest.mark.parametrize("T", [1, 2, 3, 4, 7])
def test_sweep_univalent(T):
    rep = fgamma_sweep(T, 200_000, 1e-6)
    assert rep.verdict == Verdict.UNIVALENT
    assert rep.method == Method.FGAMMA_SWEEP
    assert rep.min_root_gap > 1e-6
    assert rep.min_signed_gap > -1e-6
    assert rep.parameters["epsilon"] == pytest.approx(math.pi / (100 * 200_000))
    assert not rep.crossings


def test_sweep_contact_location():
    # the only reachable modulus-1 root sits at gamma = 2 pi/(3T+2), w = -1
    for T in (3, 4):
        rep = fgamma_sweep(T, 200_000, 1e-6)
        contacts = [m for m in rep.gap_minima if m.kind == "contact"]
        assert len(contacts) == 1
        assert contacts[0].gamma == pytest.approx(2 * math.pi / (3 * T + 2), abs=1e-8)
        assert contacts[0].w == pytest.approx(-1, abs=1e-6)
        assert len(rep.contacts) == T


def test_sweep_profile_symmetry():
    # f_{pi-gamma}(w) = f_gamma((-1)^T w), so the gap profile is symmetric
    for T in (3, 4):
        g = np.linspace(0.1, 1.5, 57)
        a = np.array([np.min(np.abs(np.abs(fgamma(T, x).roots()) - 1)) for x in g])
        b = np.array([np.min(np.abs(np.abs(fgamma(T, math.pi - x).roots()) - 1)) for x in g])
        assert np.max(np.abs(a - b)) <= 1e-10


def test_sweep_coarse_grid():
    assert fgamma_sweep(3, 1000, 1e-6).verdict == Verdict.UNIVALENT


def test_sweep_rejects_small_grid():
    with pytest.raises(ValueError):
        fgamma_sweep(3, 999)


# -- verdict pipeline --------------------------------------------------------

def test_verdict_identity():
    rep = univalence_verdict(Polynomial([0, 1]))
    assert rep.verdict == Verdict.UNIVALENT


def test_verdict_z_plus_z2():
    rep = univalence_verdict(Z_PLUS_Z2)
    assert rep.verdict == Verdict.NOT_UNIVALENT
    assert rep.critical_points_inside == [pytest.approx(-0.5)]
    assert rep.crossings
    for w in rep.crossings:
        assert abs(Z_PLUS_Z2(np.exp(1j * w.x)) - Z_PLUS_Z2(np.exp(1j * w.y))) <= 1e-10
        assert abs(np.exp(1j * w.x) - np.exp(1j * w.y)) > 1e-6


def test_verdict_necessary_condition():
    rep = univalence_verdict(Z_PLUS_03Z4)
    assert rep.verdict == Verdict.NOT_UNIVALENT
    assert rep.leading_coeff_ok is False


@pytest.mark.parametrize("T", [1, 3, 6])
def test_verdict_s4_both_methods(T):
    rep = univalence_verdict(s4_coeffs(T))
    assert rep.verdict == Verdict.UNIVALENT
    assert set(rep.methods) == {Method.CRITICAL_POINT, Method.BOUNDARY_CURVE, Method.FGAMMA_SWEEP}
    assert rep.parts["boundary"].verdict == rep.parts["fgamma"].verdict


def test_recognize_s4():
    assert recognize_s4(s4_coeffs(4)) == 4
    assert recognize_s4(Z_PLUS_Z2) is None
    perturbed = Polynomial(s4_coeffs(2).coeffs + np.r_[0, 0, 0, 1e-6, 0, 0, 0, 0])
    assert recognize_s4(perturbed) is None


def test_config_validation():
    with pytest.raises(ValueError):
        UnivalenceConfig(grid_count=10)
    with pytest.raises(ValueError):
        UnivalenceConfig(gap_tol=0)
    with pytest.raises(ValueError):
        univalence_verdict(Polynomial([2.0]))


def test_report_as_dict():
    d = univalence_verdict(Z_PLUS_Z2).as_dict()
    assert d["verdict"] == "NotUnivalent"
    assert d["methods"] == ["CriticalPoint", "BoundaryCurve"]
    assert d["critical_points_inside"][0]["re"] == pytest.approx(-0.5)


# -- quasi-extremality -------------------------------------------------------

def test_quasi_extremal_t1():
    q = quasi_extremal_check(1)
    assert q.passed
    assert q.roots.size == 3
    a = derivative_factor_a(1)
    expected = np.concatenate([[-1], np.roots([1, a, 1])])
    d = np.abs(q.roots[:, None] - expected[None, :]).min(axis=1)
    assert d.max() < 1e-12


def test_quasi_extremal_range():
    for T in range(1, 51):
        q = quasi_extremal_check(T, 1e-10)
        assert q.passed, q.failures
        assert q.roots.size == 3 * T
        assert q.max_modulus_dev <= 1e-10


def test_quasi_extremal_matches_direct_roots():
    q = quasi_extremal_check(3)
    direct = find_roots(Polynomial(s4_coeffs(3).coeffs[1:] * np.arange(1, 11)))
    d = np.abs(q.roots[:, None] - direct[None, :]).min(axis=1)
    assert d.max() < 1e-9
