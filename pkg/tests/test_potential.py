"""Generating potential U, conjugate H, and axis boundary values."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alfrod.errors import KinkPoint, NonPositiveRho, ZeroSlopeSegment
from alfrod.examples import chen_teo, kerr, taub_bolt, taub_nut
from alfrod.plf import build_rod_function
from alfrod.potential import (
    axis_limits,
    conjugacy_residuals,
    edge_density_extrapolated,
    h_axis,
    h_gauge_constant,
    laplacian_residual,
    potential_eval,
    u0_asymptotic_ratio,
    u0_eval,
    u0_h0,
    u_zz_axis,
)

from test_plf import rod_functions


class TestU0:
    def test_point_values(self):
        # at (rho, z) = (3, 4): R = 5, U0 = 10 + 4*log(1/9) ~ 1.2111017
        s = u0_eval(3.0, 4.0)
        assert s.U == pytest.approx(10.0 + 4.0 * math.log(1.0 / 9.0), abs=1e-12)
        assert s.U == pytest.approx(1.2111017, abs=1e-7)
        assert s.U_rho == pytest.approx(10.0 / 3.0, abs=1e-12)
        assert s.U_zz == pytest.approx(-0.4, abs=1e-12)
        assert s.U_rhoz == pytest.approx(8.0 / 15.0, abs=1e-12)

    def test_even_in_z(self):
        a = u0_eval(1.5, 2.5)
        b = u0_eval(1.5, -2.5)
        assert a.U == pytest.approx(b.U, rel=1e-14)
        assert a.U_z == pytest.approx(-b.U_z, rel=1e-14)

    def test_large_z_branches_agree(self):
        # computing R + z directly cancels catastrophically for z << 0; the
        # two log branches must agree through the evenness of U0 in z
        a = u0_eval(1e-3, -1e6)
        b = u0_eval(1e-3, 1e6)
        assert math.isfinite(a.U)
        assert a.U == pytest.approx(b.U, rel=1e-12)
        assert a.U_z == pytest.approx(-b.U_z, rel=1e-12)

    def test_h0(self):
        # H0 = zR + rho^2 log((R+z)/rho)
        assert u0_h0(3.0, 4.0) == pytest.approx(20.0 + 9.0 * math.log(3.0), abs=1e-12)

    def test_rho_positive_required(self):
        with pytest.raises(NonPositiveRho):
            u0_eval(0.0, 1.0)


class TestPotential:
    def test_taub_nut_closed_form(self):
        # f = 2 + |z|: U = 2 log rho^2 + U0, e.g. at (3, 4)
        f = taub_nut(1.0).f
        s = potential_eval(f, 3.0, 4.0)
        assert s.U == pytest.approx(4.0 * math.log(3.0) + u0_eval(3.0, 4.0).U,
                                    abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(rod_functions(), st.floats(0.05, 20.0), st.floats(-8.0, 8.0))
    def test_harmonicity(self, f, rho, z):
        s = potential_eval(f, rho, z)
        scale = abs(s.U_rhorho) + abs(s.U_rho / rho) + abs(s.U_zz)
        assert abs(laplacian_residual(f, rho, z)) <= 1e-12 * scale

    @settings(max_examples=25, deadline=None)
    @given(rod_functions(), st.floats(0.5, 5.0), st.floats(-3.0, 3.0))
    def test_conjugacy(self, f, rho, z):
        res_r, res_z = conjugacy_residuals(f, rho, z)
        assert abs(res_r) < 1e-6
        assert abs(res_z) < 1e-6

    def test_signs(self):
        f = chen_teo(0.3).f
        for rho in (0.1, 1.0, 10.0):
            for z in (-4.0, 0.1, 4.0):
                s = potential_eval(f, rho, z)
                assert s.U_rho > 0.0
                assert s.U_zz < 0.0

    def test_asymptotic_ratio(self):
        f = kerr(0.6).f
        # convergence is only logarithmic in R
        assert abs(u0_asymptotic_ratio(f, 800.0, 600.0) - 1.0) < 2e-2
        assert (abs(u0_asymptotic_ratio(f, 8000.0, 6000.0) - 1.0)
                < abs(u0_asymptotic_ratio(f, 800.0, 600.0) - 1.0))

    def test_edge_density_recovers_f(self):
        # U / log(rho^2) -> f(z) on the axis (slowly; extrapolation needed)
        f = chen_teo(0.4).f
        for z in (-3.0, 0.2, 2.5):
            target = f.A + float(f.kink_a @ np.abs(z - f.kink_z))
            assert edge_density_extrapolated(f, z) == pytest.approx(target, abs=1e-6)


class TestAxis:
    def test_h_axis_gauge(self):
        # leftmost segment: F = 0 forces H(0,z) = -f(z)^2 there
        f = kerr(0.6).f
        z = float(f.kink_z[0]) - 2.0
        value = f.A + float(f.kink_a @ np.abs(z - f.kink_z))
        assert h_axis(f, z) == pytest.approx(-value * value, abs=1e-12)

    def test_h_matches_interior_limit(self):
        f = taub_nut(1.0).f
        z = 3.0
        h_small_rho = potential_eval(f, 1e-8, z).H
        assert h_small_rho == pytest.approx(h_axis(f, z), abs=1e-6)
        assert h_gauge_constant(f) == pytest.approx(-4.0, abs=1e-12)

    def test_u_zz_axis(self):
        f = taub_nut(1.0).f
        assert u_zz_axis(f, 4.0) == pytest.approx(-0.5, abs=1e-14)

    def test_taub_nut_axis_values(self):
        # V = e^{2nu} = 1 + 2/R and F = 2z/R extend to the axis: at z = 2,
        # the symmetric-gauge F is 2; the polytope gauge used here has F_0 = 0
        # so F = 0 left of the kink and 4 right of it
        f = taub_nut(1.0).f
        right = axis_limits(f, 2.0)
        assert right.V_axis == pytest.approx(2.0, abs=1e-12)
        assert right.e2nu_axis == pytest.approx(2.0, abs=1e-12)
        assert right.F_axis == pytest.approx(4.0, abs=1e-12)
        left = axis_limits(f, -2.0)
        assert left.V_axis == pytest.approx(2.0, abs=1e-12)
        assert left.F_axis == pytest.approx(0.0, abs=1e-12)

    def test_kink_point_rejected(self):
        f = taub_nut(1.0).f
        with pytest.raises(KinkPoint):
            axis_limits(f, 0.0)

    def test_zero_slope_segment(self):
        f = taub_bolt().f
        z = float(f.kink_z.mean())
        with pytest.raises(ZeroSlopeSegment):
            axis_limits(f, z)
        lim = axis_limits(f, z, allow_zero_slope=True)
        assert lim.zero_slope
        assert lim.F_axis is None and lim.V_axis is None
        assert lim.v_coeff is not None and lim.v_coeff > 0.0

    def test_axis_limits_match_interior(self):
        f = chen_teo(0.3).f
        for z in (-4.0, float(f.kink_z[0] + f.kink_z[1]) / 2.0, 5.0):
            lim = axis_limits(f, z)
            s = potential_eval(f, 1e-7, z)
            k = 2.0 * f.A
            denom = s.U_rhoz ** 2 + s.U_zz ** 2
            v = -(1e-7 * s.U_rho + s.U_rho ** 2 * s.U_zz / denom) / k
            assert v == pytest.approx(lim.V_axis, rel=1e-5)
