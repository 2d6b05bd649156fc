"""Tests for densities, transforms and moments of the variable families."""

import json
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from stable_lab.laws import (
    AlphaParam,
    DensityGrid,
    Family,
    VariableDescriptor,
    derived_density,
    fractional_moment,
    kanter_b,
    laplace_transform,
    power_density,
    stable_density,
    support_left_edge,
)
from stable_lab.laws import _stable_tail_series, _u_from_target
from stable_lab.numerics import QuadConfig, mittag_leffler

mp.mp.dps = 40


def v_edge(a: float) -> float:
    return (1.0 - a) * a ** (a / (1.0 - a))


def half_density(x: float) -> float:
    return math.exp(-1.0 / (4.0 * x)) / (2.0 * math.sqrt(math.pi) * x ** 1.5)


def v_half_closed(x: float) -> float:
    return 1.0 / (2.0 * math.pi * x * math.sqrt(x - 0.25))


# ---------------------------------------------------------------------
# AlphaParam
# ---------------------------------------------------------------------


class TestAlphaParam:
    def test_beta_is_exact_complement(self):
        ap = AlphaParam(0.3)
        assert ap.beta == 1.0 - 0.3

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.7])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            AlphaParam(bad)


# ---------------------------------------------------------------------
# kanter_b
# ---------------------------------------------------------------------


class TestKanterB:
    def test_half_closed_form_value(self):
        ev = kanter_b(0.5, math.pi / 2)
        assert ev.b == pytest.approx(math.sqrt(2.0), rel=1e-13)

    def test_half_h_value(self):
        ev = kanter_b(0.5, math.pi / 2)
        assert ev.h == pytest.approx(-1.0, rel=1e-12)

    def test_half_closed_form_on_grid(self):
        for u in np.linspace(1e-3, math.pi - 1e-3, 37):
            ev = kanter_b(0.5, u)
            assert ev.b == pytest.approx(2.0 * math.cos(u / 2.0), rel=1e-12)
            assert ev.h == pytest.approx(-1.0 / math.tan(u / 2.0) ** 2,
                                         rel=1e-9, abs=1e-12)

    def test_limit_at_zero(self):
        for a in (0.2, 0.5, 0.77):
            b0 = a ** (-a) * (1 - a) ** (-(1 - a))
            assert kanter_b(a, 1e-9).b == pytest.approx(b0, rel=1e-9)

    def test_limit_at_pi(self):
        assert kanter_b(0.6, math.pi - 1e-9).b < 1e-8

    def test_vs_mpmath_derivatives(self):
        def b_mp(a, u):
            a = mp.mpf(a)
            return ((mp.sin(u) / mp.sin(a * u)) ** a
                    * (mp.sin(u) / mp.sin((1 - a) * u)) ** (1 - a))

        for a in (0.17, 0.5, 0.83):
            for u in (0.3, 1.1, 2.2, 2.9):
                ev = kanter_b(a, u)
                b = b_mp(a, mp.mpf(u))
                b1 = mp.diff(lambda t: b_mp(a, t), mp.mpf(u))
                b2 = mp.diff(lambda t: b_mp(a, t), mp.mpf(u), 2)
                assert ev.b == pytest.approx(float(b), rel=1e-12)
                assert ev.b1 == pytest.approx(float(b1), rel=1e-9)
                assert ev.b2 == pytest.approx(float(b2), rel=1e-8)
                assert ev.h == pytest.approx(float(b2 * b / b1 ** 2),
                                             rel=1e-8)

    def test_decreasing_and_concave_dense_grid(self):
        us = np.linspace(1e-4, math.pi - 1e-4, 10_000)
        for a in (0.2, 0.5, 0.8):
            b = kanter_b(a, us).b
            d1 = np.diff(b)
            d2 = np.diff(b, 2)
            assert np.all(d1 < 0.0)
            assert np.all(d2 < 1e-12 * np.abs(b[:-2]).max())

    def test_alpha_beta_symmetry(self):
        us = np.linspace(1e-3, math.pi - 1e-3, 101)
        for a in (0.1, 0.33, 0.49):
            ba = kanter_b(a, us).b
            bb = kanter_b(1.0 - a, us).b
            assert np.all(np.abs(ba - bb) <= 1e-12 * np.abs(ba))

    def test_signs(self):
        for a in (0.25, 0.5, 0.9):
            for u in (0.5, 1.5, 3.0):
                ev = kanter_b(a, u)
                assert ev.b > 0.0
                assert ev.b1 < 0.0
                assert ev.b2 < 0.0

    @pytest.mark.parametrize("u", [0.0, -0.5, math.pi, 4.0])
    def test_u_domain(self, u):
        with pytest.raises(ValueError):
            kanter_b(0.5, u)

    def test_vector_matches_scalar(self):
        us = np.array([0.4, 1.2, 2.8])
        ev = kanter_b(0.37, us)
        for i, u in enumerate(us):
            one = kanter_b(0.37, float(u))
            assert ev.b[i] == one.b
            assert ev.b1[i] == one.b1
            assert ev.b2[i] == one.b2
            assert ev.h[i] == one.h

    @given(st.floats(0.02, 0.98), st.floats(1e-3, math.pi - 1e-3))
    @settings(max_examples=150, deadline=None)
    def test_property_signs_and_h_identity(self, a, u):
        ev = kanter_b(a, u)
        assert ev.b > 0.0
        assert ev.b1 < 0.0
        assert ev.h == pytest.approx(ev.b2 * ev.b / ev.b1 ** 2,
                                     rel=1e-10, abs=1e-12)


# ---------------------------------------------------------------------
# stable_density
# ---------------------------------------------------------------------


class TestStableDensity:
    def test_half_matches_closed_form(self):
        xs = np.logspace(math.log10(0.05), math.log10(50.0), 60)
        fs = stable_density(0.5, xs)
        for x, f in zip(xs, fs):
            assert f == pytest.approx(half_density(x), rel=1e-8)

    def test_value_at_one(self):
        assert stable_density(0.5, 1.0) == pytest.approx(0.2196956, rel=1e-6)

    @pytest.mark.parametrize("a", [0.2, 0.35, 0.5, 0.65, 0.8, 0.9])
    def test_normalization(self, a):
        val, _ = quad(lambda t: stable_density(a, t), 0.0, np.inf, limit=400)
        assert val == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("a", [0.15, 0.4, 0.6, 0.8, 0.95])
    def test_series_and_mixture_branches_agree(self, a):
        # straddle the x^alpha = 2 switch and compare both evaluators
        x_switch = 2.0 ** (1.0 / a)
        cfg = QuadConfig(abs_tol=1e-14, rel_tol=1e-11)
        for fac in (1.0, 2.0, 5.0):
            x = x_switch * fac
            series = _stable_tail_series(a, x)
            beta = 1.0 - a
            y = x ** (-a / beta)
            from stable_lab.laws import _mixture_density
            mixture = (a / beta) * x ** (-a / beta - 1.0) \
                * _mixture_density(a, y, cfg)
            assert series == pytest.approx(mixture, rel=1e-9)

    def test_far_tail_constant(self):
        # f(x) x^(1+a) -> a / Gamma(1 - a)
        for a in (0.3, 0.8):
            c = a / math.gamma(1.0 - a)
            x = 10.0 ** (9.0 / a)
            assert stable_density(a, x) * x ** (1 + a) == pytest.approx(
                c, rel=1e-6)

    def test_positive_and_vectorized(self):
        xs = np.logspace(-2, 10, 25)
        fs = stable_density(0.7, xs)
        assert fs.shape == xs.shape
        assert np.all(fs >= 0.0)
        assert stable_density(0.7, 1.3) == pytest.approx(
            float(stable_density(0.7, np.array([1.3]))[0]), rel=0, abs=0)

    def test_x_domain(self):
        with pytest.raises(ValueError):
            stable_density(0.5, 0.0)
        with pytest.raises(ValueError):
            stable_density(0.5, -1.0)

    @given(st.floats(0.05, 0.95), st.floats(-2.0, 6.0))
    @settings(max_examples=60, deadline=None)
    def test_property_nonnegative(self, a, lx):
        assert stable_density(a, 10.0 ** lx) >= 0.0


# ---------------------------------------------------------------------
# power_density
# ---------------------------------------------------------------------


class TestPowerDensity:
    def test_identity_power(self):
        xs = np.array([0.3, 1.0, 4.2])
        assert power_density(0.6, 1.0, xs) == pytest.approx(
            stable_density(0.6, xs), rel=1e-12)

    def test_half_inverse_closed_form(self):
        # Z_{1/2}^{-1} has density x^(-1/2) e^(-x/4) / (2 sqrt(pi))
        for x in (0.05, 0.3, 1.0, 3.0, 12.0):
            want = x ** -0.5 * math.exp(-x / 4.0) / (2.0 * math.sqrt(math.pi))
            assert power_density(0.5, -1.0, x) == pytest.approx(want,
                                                                rel=1e-9)

    def test_small_x_log_slope(self):
        xs = np.logspace(-4, -2, 40)
        fs = power_density(0.3, -0.6, xs)
        slope = np.polyfit(np.log(xs), np.log(fs), 1)[0]
        assert slope == pytest.approx(-0.5, abs=0.02)

    def test_normalization(self):
        for (a, g) in ((0.3, -0.6), (0.5, 2.0), (0.7, -1.5)):
            val, _ = quad(lambda t: power_density(a, g, t), 0.0, np.inf,
                          limit=400)
            assert val == pytest.approx(1.0, abs=1e-6)

    def test_gamma_zero_rejected(self):
        with pytest.raises(ValueError):
            power_density(0.5, 0.0, 1.0)


# ---------------------------------------------------------------------
# derived_density
# ---------------------------------------------------------------------


class TestDerivedDensity:
    def test_quotient_t_example(self):
        d = derived_density(VariableDescriptor(Family.QUOTIENT_T, alpha=0.5),
                            1.0)
        assert d == pytest.approx(1.0 / math.pi, rel=1e-12)

    def test_quotient_y_example(self):
        d = derived_density(VariableDescriptor(Family.QUOTIENT_Y, alpha=0.5),
                            1.0)
        assert d == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-12)

    def test_v_half_example(self):
        d = derived_density(VariableDescriptor(Family.V_HALF), 0.5)
        assert d == pytest.approx(2.0 / math.pi, rel=1e-12)

    def test_f_t_at_zero(self):
        for t in (0.5, 1.0, 2.0, 3.7):
            d = derived_density(VariableDescriptor(Family.F_T, param=t), 0.0)
            assert d == pytest.approx(1.0, rel=1e-14)

    def test_prop41_m_half_reduces(self):
        vd = VariableDescriptor(Family.PROP41_M, alpha=0.5)
        for u in (0.0, 0.3, 1.0, 3.0, 20.0):
            assert derived_density(vd, u) == pytest.approx(
                1.0 / (u + 1.0), rel=1e-12)

    def test_function_families_reject_negative(self):
        with pytest.raises(ValueError):
            derived_density(VariableDescriptor(Family.F_T, param=1.0), -0.5)
        with pytest.raises(ValueError):
            derived_density(
                VariableDescriptor(Family.PROP41_M, alpha=0.3), -0.1)

    def test_densities_zero_outside_support(self):
        assert derived_density(
            VariableDescriptor(Family.STABLE, alpha=0.4), 1e-300) >= 0.0
        vd = VariableDescriptor(Family.KANTER_V, alpha=0.4)
        edge = v_edge(0.4)
        assert derived_density(vd, edge * 0.999) == 0.0
        assert derived_density(vd, edge * 1.001) > 0.0
        assert derived_density(VariableDescriptor(Family.V_HALF), 0.2) == 0.0
        assert derived_density(
            VariableDescriptor(Family.Y_SHIFTED, param=1.0), -0.5) == 0.0

    def test_kanter_v_half_closed_form(self):
        vd = VariableDescriptor(Family.KANTER_V, alpha=0.5)
        for x in (0.2501, 0.3, 0.8, 3.0, 40.0, 1e6, 1e12):
            assert derived_density(vd, x) == pytest.approx(
                v_half_closed(x), rel=1e-9)

    def test_kanter_v_exact_cdf_oracle(self):
        # P(V <= x) = u(x)/pi where log b(u) = -beta log x, b decreasing
        for a in (0.35, 0.6, 0.9):
            beta = 1.0 - a
            vd = VariableDescriptor(Family.KANTER_V, alpha=a)
            for x1, x2 in ((v_edge(a) * 1.001, 1.5), (1.5, 8.0),
                           (8.0, 200.0)):
                num, _ = quad(lambda t: derived_density(vd, t), x1, x2,
                              limit=300)
                u1 = _u_from_target(a, -beta * math.log(x1))
                u2 = _u_from_target(a, -beta * math.log(x2))
                want = (u2 - u1) / math.pi
                assert num == pytest.approx(want, rel=1e-9, abs=1e-14)

    def test_kanter_v_spike_branch_continuity(self):
        # values on both sides of the asymptotic/root-finding threshold
        a = 0.6
        s = math.sin(math.pi * a)
        # threshold sits at d0 = 1e-5 (|D| < 1 here): x = (s/1e-5)^(1/beta)
        x_thr = (s / 1e-5) ** (1.0 / (1.0 - a))
        vd = VariableDescriptor(Family.KANTER_V, alpha=a)
        lo = derived_density(vd, x_thr * 0.99)
        hi = derived_density(vd, x_thr * 1.01)
        mid = derived_density(vd, x_thr)
        assert lo > mid > hi
        # smooth: compare against local power interpolation
        interp = math.sqrt(lo * hi) * (0.99 * 1.01) ** 0.0
        assert mid == pytest.approx(interp, rel=1e-4)

    def test_mittag_leffler_cdf_relation(self):
        # integral of the density over (0, X] equals 1 - E_a(-X^a)
        for a in (0.3, 0.7):
            vd = VariableDescriptor(Family.MITTAG_LEFFLER, alpha=a)
            for X in (0.5, 2.0, 10.0):
                num, _ = quad(lambda t: derived_density(vd, t), 0.0, X,
                              limit=300)
                want = 1.0 - float(mittag_leffler(a, -(X ** a)))
                assert num == pytest.approx(want, rel=1e-8)

    def test_w_scale_density_and_laplace(self):
        # E[e^(-lam X)] = Gamma(1+lam) / (Gamma(1+a lam) Gamma(1+b lam))
        for a in (0.3, 0.8):
            vd = VariableDescriptor(Family.W_SCALE, alpha=a)
            lo = support_left_edge(vd)
            b = 1.0 - a
            assert lo == pytest.approx(a * math.log(a) + b * math.log(b),
                                       rel=1e-14)
            assert derived_density(vd, lo - 1e-9) == 0.0
            for lam in (0.5, 2.0):
                closed = laplace_transform(vd, lam)
                want = math.exp(math.lgamma(1 + lam) - math.lgamma(1 + a * lam)
                                - math.lgamma(1 + b * lam))
                assert closed == pytest.approx(want, rel=1e-13)
                num, _ = quad(lambda t: math.exp(-lam * t)
                              * derived_density(vd, t), lo, np.inf, limit=300)
                assert num == pytest.approx(closed, rel=1e-8)

    def test_subordinated_matches_stable(self):
        xs = np.array([0.2, 1.0, 7.0])
        got = derived_density(
            VariableDescriptor(Family.SUBORDINATED, alpha=0.4), xs)
        assert got == pytest.approx(stable_density(0.4, xs), rel=1e-12)

    def test_pss_factor_matches_inverse_power(self):
        xs = np.array([0.3, 1.0, 2.5])
        got = derived_density(
            VariableDescriptor(Family.PSS_FACTOR, alpha=0.4, param=1.0), xs)
        assert got == pytest.approx(power_density(0.4, -1.0, xs), rel=1e-12)

    NORMALIZATION_CASES = [
        VariableDescriptor(Family.QUOTIENT_T, alpha=0.3),
        VariableDescriptor(Family.QUOTIENT_Y, alpha=0.7),
        VariableDescriptor(Family.MITTAG_LEFFLER, alpha=0.6),
        VariableDescriptor(Family.MIXING_X, alpha=0.3),
        VariableDescriptor(Family.W_SCALE, alpha=0.45),
        VariableDescriptor(Family.GAMMA, param=0.5),
        VariableDescriptor(Family.BETA, param=0.5, param2=0.5),
        VariableDescriptor(Family.EXPONENTIAL),
    ]

    @pytest.mark.parametrize("vd", NORMALIZATION_CASES,
                             ids=lambda v: v.family.value)
    def test_normalization_smooth_families(self, vd):
        try:
            lo = support_left_edge(vd)
        except ValueError:
            lo = 0.0
        hi = 1.0 if vd.family is Family.BETA else np.inf
        val, _ = quad(lambda t: derived_density(vd, t), lo, hi, limit=400,
                      points=None if hi is np.inf else [0.5])
        assert val == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("a", [0.35, 0.9])
    def test_normalization_kanter_v(self, a):
        # substitute x = edge + s^2 to absorb the edge singularity
        vd = VariableDescriptor(Family.KANTER_V, alpha=a)
        edge = v_edge(a)
        val, _ = quad(
            lambda s: derived_density(vd, edge + s * s) * 2.0 * s,
            0.0, np.inf, limit=400)
        assert val == pytest.approx(1.0, abs=1e-6)

    def test_normalization_v_inverse_and_y_shifted(self):
        a = 0.6
        vd = VariableDescriptor(Family.KANTER_V_POWER, alpha=a, param=-1.0)
        hi_end = 1.0 / v_edge(a)
        val, _ = quad(lambda s: derived_density(vd, hi_end - s * s) * 2.0 * s,
                      0.0, math.sqrt(hi_end), limit=400)
        assert val == pytest.approx(1.0, abs=1e-6)
        vd = VariableDescriptor(Family.Y_SHIFTED, param=1.0)
        val, _ = quad(lambda s: derived_density(vd, s * s) * 2.0 * s,
                      0.0, np.inf, limit=400)
        assert val == pytest.approx(1.0, abs=1e-6)


# ---------------------------------------------------------------------
# support_left_edge
# ---------------------------------------------------------------------


class TestSupportLeftEdge:
    def test_kanter_v_half(self):
        vd = VariableDescriptor(Family.KANTER_V, alpha=0.5)
        assert support_left_edge(vd) == pytest.approx(0.25, rel=1e-14)

    def test_v_half(self):
        assert support_left_edge(
            VariableDescriptor(Family.V_HALF)) == pytest.approx(0.25)

    def test_kanter_v_power(self):
        vd = VariableDescriptor(Family.KANTER_V_POWER, alpha=0.5, param=2.0)
        assert support_left_edge(vd) == pytest.approx(0.0625, rel=1e-13)
        vd = VariableDescriptor(Family.KANTER_V_POWER, alpha=0.5, param=-1.0)
        assert support_left_edge(vd) == 0.0

    def test_w_scale_value_is_negative(self):
        vd = VariableDescriptor(Family.W_SCALE, alpha=0.3)
        got = support_left_edge(vd)
        assert got == pytest.approx(0.3 * math.log(0.3) + 0.7 * math.log(0.7),
                                    rel=1e-14)
        assert got < 0.0

    @pytest.mark.parametrize("vd", [
        VariableDescriptor(Family.STABLE, alpha=0.5),
        VariableDescriptor(Family.MITTAG_LEFFLER, alpha=0.5),
        VariableDescriptor(Family.EXPONENTIAL),
    ], ids=lambda v: v.family.value)
    def test_unsupported_families_raise(self, vd):
        with pytest.raises(ValueError):
            support_left_edge(vd)


# ---------------------------------------------------------------------
# fractional_moment
# ---------------------------------------------------------------------


class TestFractionalMoment:
    def test_zeroth(self):
        for a in (0.1, 0.5, 0.9):
            assert fractional_moment(a, 0.0) == 1.0

    def test_half_inverse_moment(self):
        assert fractional_moment(0.5, -1.0) == pytest.approx(2.0, rel=1e-13)

    def test_doubled_index_moment(self):
        for ap in (0.2, 0.35):
            want = math.sqrt(math.pi) / math.gamma(1.0 - ap)
            assert fractional_moment(2.0 * ap, ap) == pytest.approx(
                want, rel=1e-13)

    def test_infinite_moment_rejected(self):
        with pytest.raises(ValueError):
            fractional_moment(0.5, 0.5)
        with pytest.raises(ValueError):
            fractional_moment(0.5, 0.8)

    @pytest.mark.parametrize("s", [-1.0, -0.3, 0.06])
    def test_matches_quadrature(self, s):
        a = 0.6
        want = fractional_moment(a, s)
        got, _ = quad(lambda t: t ** s * stable_density(a, t), 0.0, np.inf,
                      limit=400)
        assert got == pytest.approx(want, rel=1e-6)

    @given(st.floats(0.05, 0.95), st.floats(-5.0, 0.0))
    @settings(max_examples=100, deadline=None)
    def test_property_positive(self, a, s):
        if s < a:
            assert fractional_moment(a, s) > 0.0


# ---------------------------------------------------------------------
# laplace_transform
# ---------------------------------------------------------------------


class TestLaplaceTransform:
    def test_at_zero_is_one(self):
        for vd in (VariableDescriptor(Family.STABLE, alpha=0.4),
                   VariableDescriptor(Family.KANTER_V, alpha=0.4),
                   VariableDescriptor(Family.V_HALF)):
            assert laplace_transform(vd, 0.0) == 1.0

    def test_stable_closed(self):
        vd = VariableDescriptor(Family.STABLE, alpha=0.5)
        assert laplace_transform(vd, 4.0) == pytest.approx(math.exp(-2.0),
                                                           rel=1e-13)

    def test_mittag_leffler_at_one(self):
        vd = VariableDescriptor(Family.MITTAG_LEFFLER, alpha=0.7)
        assert laplace_transform(vd, 1.0) == pytest.approx(0.5, rel=1e-13)

    def test_mittag_leffler_closed_vs_density(self):
        vd = VariableDescriptor(Family.MITTAG_LEFFLER, alpha=0.6)
        for lam in (0.5, 2.0):
            closed = laplace_transform(vd, lam)
            num, _ = quad(lambda t: math.exp(-lam * t)
                          * derived_density(vd, t), 0.0, np.inf, limit=300)
            assert closed == pytest.approx(1.0 / (1.0 + lam ** 0.6),
                                           rel=1e-14)
            assert num == pytest.approx(closed, rel=1e-7)

    def test_kanter_v_quadrature_against_direct_oracle(self):
        vd = VariableDescriptor(Family.KANTER_V, alpha=0.5)
        for lam in (0.3, 1.0, 2.7):
            got = laplace_transform(vd, lam)
            want, _ = quad(
                lambda t: math.exp(-lam * t) * v_half_closed(t),
                0.25, np.inf, limit=300)
            assert got == pytest.approx(want, rel=1e-8)

    def test_negative_lambda_rejected(self):
        with pytest.raises(ValueError):
            laplace_transform(
                VariableDescriptor(Family.STABLE, alpha=0.5), -0.1)

    def test_function_families_rejected(self):
        with pytest.raises(ValueError):
            laplace_transform(
                VariableDescriptor(Family.F_T, param=1.0), 1.0)


# ---------------------------------------------------------------------
# VariableDescriptor validation and serialization
# ---------------------------------------------------------------------


class TestDescriptor:
    def test_alpha_required(self):
        with pytest.raises(ValueError):
            VariableDescriptor(Family.STABLE)

    def test_v_half_forces_alpha(self):
        vd = VariableDescriptor(Family.V_HALF)
        assert vd.alpha.alpha == 0.5

    def test_power_nonzero(self):
        with pytest.raises(ValueError):
            VariableDescriptor(Family.STABLE_POWER, alpha=0.5, param=0.0)

    def test_y_shifted_param_positive(self):
        with pytest.raises(ValueError):
            VariableDescriptor(Family.Y_SHIFTED, param=-1.0)

    def test_f_t_param_positive(self):
        with pytest.raises(ValueError):
            VariableDescriptor(Family.F_T, param=0.0)

    def test_mixing_x_alpha_range(self):
        with pytest.raises(ValueError):
            VariableDescriptor(Family.MIXING_X, alpha=0.6)
        VariableDescriptor(Family.MIXING_X, alpha=0.49)

    def test_pss_factor_gamma_range(self):
        # gamma must be >= alpha/beta
        with pytest.raises(ValueError):
            VariableDescriptor(Family.PSS_FACTOR, alpha=0.6, param=1.0)
        VariableDescriptor(Family.PSS_FACTOR, alpha=0.6, param=1.6)

    def test_gamma_beta_shapes(self):
        with pytest.raises(ValueError):
            VariableDescriptor(Family.GAMMA, param=0.0)
        with pytest.raises(ValueError):
            VariableDescriptor(Family.BETA, param=0.5, param2=0.0)

    def test_string_family_accepted(self):
        vd = VariableDescriptor("stable", alpha=0.4)
        assert vd.family is Family.STABLE

    def test_dict_round_trip(self):
        for vd in (VariableDescriptor(Family.STABLE, alpha=0.4),
                   VariableDescriptor(Family.KANTER_V_POWER, alpha=0.6,
                                      param=-2.0),
                   VariableDescriptor(Family.BETA, param=0.5, param2=1.5)):
            back = VariableDescriptor.from_dict(vd.to_dict())
            assert back == vd


# ---------------------------------------------------------------------
# DensityGrid
# ---------------------------------------------------------------------


class TestDensityGrid:
    def test_build_and_write(self, tmp_path):
        vd = VariableDescriptor(Family.STABLE, alpha=0.5)
        pts = np.logspace(math.log10(0.05), math.log10(50.0), 9)
        grid = DensityGrid.build(vd, pts)
        out = tmp_path / "grid.csv"
        grid.write_csv(out)
        lines = out.read_text().splitlines()
        assert lines[0] == "x,value"
        assert len(lines) == 10
        x0, v0 = map(float, lines[1].split(","))
        assert x0 == pytest.approx(0.05)
        assert v0 == pytest.approx(half_density(0.05), rel=1e-8)
        side = json.loads((tmp_path / "grid.csv.json").read_text())
        assert VariableDescriptor.from_dict(side["descriptor"]) == vd

    def test_validation(self):
        vd = VariableDescriptor(Family.STABLE, alpha=0.5)
        with pytest.raises(ValueError):
            DensityGrid(np.array([1.0, 1.0]), np.array([0.1, 0.1]), vd)
        with pytest.raises(ValueError):
            DensityGrid(np.array([1.0, 2.0]), np.array([0.1, -0.1]), vd)
        with pytest.raises(ValueError):
            DensityGrid(np.array([1.0, 2.0]), np.array([0.1, math.nan]), vd)
