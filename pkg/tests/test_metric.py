"""Metric assembly, moment map, and asymptotic flatness."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alfrod.errors import NearAxisPoint, NonPositiveRho
from alfrod.examples import chen_teo, kerr, taub_bolt, taub_nut
from alfrod.metric import (
    flat_deviation,
    h_metric_constant,
    kahler_sample,
    moment_map,
    tod_metric,
)
from alfrod.potential import axis_limits, h_gauge_constant

from test_plf import rod_functions


class TestTaubNut:
    """f = 2 + |z| gives V = e^{2nu} = 1 + 2/R, F = 2z/R in closed form."""

    def test_closed_form_grid(self):
        f = taub_nut(1.0).f
        for rho in np.logspace(-1, 1, 7):
            for z in np.linspace(-5.0, 5.0, 7):
                big_r = math.hypot(rho, z)
                ms = tod_metric(f, float(rho), float(z))
                assert ms.V == pytest.approx(1.0 + 2.0 / big_r, abs=1e-12)
                assert ms.e2nu == pytest.approx(1.0 + 2.0 / big_r, abs=1e-12)
                assert ms.F == pytest.approx(2.0 * z / big_r, abs=1e-12)

    def test_point(self):
        ms = tod_metric(taub_nut(1.0).f, 3.0, 4.0)
        assert ms.V == pytest.approx(1.4, abs=1e-13)
        assert ms.F == pytest.approx(1.6, abs=1e-13)
        assert ms.k == pytest.approx(4.0)

    def test_moment_map_point(self):
        x1, mu = moment_map(taub_nut(1.0).f, 3.0, 4.0)
        assert x1 == pytest.approx(1.0 / 7.0, abs=1e-13)

    def test_metric_matrix_entries(self):
        ms = tod_metric(taub_nut(1.0).f, 3.0, 4.0)
        g = ms.g
        assert g[0, 0] == g[1, 1] == ms.e2nu
        assert g[2, 2] == pytest.approx(ms.V * 9.0 + ms.F ** 2 / ms.V)
        assert g[3, 3] == pytest.approx(1.0 / ms.V)
        assert g[2, 3] == g[3, 2] == pytest.approx(-ms.F / ms.V)
        assert g[0, 1] == 0.0 and g[0, 2] == 0.0


class TestGauges:
    def test_symmetric_gauge_for_taub_nut(self):
        # polytope gauge has F in {0, 4} on the two edges; the metric gauge
        # shifts by -(F_0 + F_r)/2 = -2
        f = taub_nut(1.0).f
        assert h_metric_constant(f) - h_gauge_constant(f) == pytest.approx(4.0)

    def test_axis_limits_use_polytope_gauge(self):
        f = kerr(0.6).f
        lim = axis_limits(f, float(f.kink_z[0]) - 1.0)
        assert lim.F_axis == pytest.approx(0.0, abs=1e-12)


class TestDomainChecks:
    def test_rho_positive(self):
        with pytest.raises(NonPositiveRho):
            tod_metric(taub_nut(1.0).f, -1.0, 0.0)

    def test_near_axis_rejected(self):
        with pytest.raises(NearAxisPoint):
            tod_metric(taub_nut(1.0).f, 1e-12, 5.0)
        with pytest.raises(NearAxisPoint):
            moment_map(taub_nut(1.0).f, 1e-12, 5.0)


class TestMomentMap:
    @settings(max_examples=25, deadline=None)
    @given(rod_functions(), st.floats(0.5, 5.0), st.floats(-4.0, 4.0))
    def test_x1_positive_and_bounded(self, f, rho, z):
        x1, mu = moment_map(f, rho, z)
        assert 0.0 < x1 < 1.0 / f.A  # 1/f attains its max 1/A only at a kink

    def test_mu_spans_edge_at_infinity(self):
        # mu tends to -/+1 along the axis far to the left/right
        f = chen_teo(0.35).f
        _, mu_left = moment_map(f, 1.0, -2e4)
        _, mu_right = moment_map(f, 1.0, 2e4)
        assert mu_left == pytest.approx(-1.0, abs=1e-3)
        assert mu_right == pytest.approx(1.0, abs=1e-3)

    def test_kahler_sample(self):
        f = taub_nut(1.0).f
        ks = kahler_sample(f, 3.0, 4.0)
        ms = tod_metric(f, 3.0, 4.0)
        np.testing.assert_allclose(ks.gK, ks.x1 ** 2 * ms.g)
        assert ks.scalK_target == pytest.approx(24.0 / 7.0, abs=1e-12)


class TestALF:
    @pytest.mark.parametrize("rod", [taub_nut(1.0), kerr(0.6), taub_bolt(),
                                     chen_teo(0.3)],
                             ids=["taub_nut", "kerr", "taub_bolt", "chen_teo"])
    def test_first_order_decay(self, rod):
        for theta in (0.5, 1.2, 2.3):
            errs = [flat_deviation(rod.f, R, theta) for R in (10.0, 100.0, 1000.0)]
            assert errs[0] > errs[1] > errs[2]
            consts = [e * R for e, R in zip(errs, (10.0, 100.0, 1000.0))]
            assert max(consts) / min(consts) < 10.0
