"""Rod-function construction, evaluation and transformation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alfrod.errors import (
    InconsistentLengths,
    NonIncreasingKinks,
    NonPositiveA,
    NonPositiveWeight,
    SlopeRangeViolation,
    WeightsNotNormalized,
    ZeroScale,
)
from alfrod.plf import (
    build_rod_function,
    center_rod_function,
    eval_rod_function,
    rescale_rod_function,
    rod_function_from_samples,
)


def rod_functions(max_r=4):
    """Strategy producing valid rod functions with 1..max_r kinks."""
    def make(r, zs, ws, A):
        zk = np.cumsum(np.asarray(zs[:r])) - 1.0
        w = np.asarray(ws[:r])
        w = w / w.sum()
        return build_rod_function(A, list(zip(zk, w)))
    return st.integers(1, max_r).flatmap(lambda r: st.builds(
        make, st.just(r),
        st.lists(st.floats(0.1, 3.0), min_size=r, max_size=r),
        st.lists(st.floats(0.1, 1.0), min_size=r, max_size=r),
        st.floats(0.2, 5.0)))


class TestBuild:
    def test_basic(self):
        f = build_rod_function(2.0, [(0.0, 1.0)])
        assert f.r == 1
        assert f.A == 2.0
        np.testing.assert_allclose(f.slopes, [-1.0, 1.0])
        np.testing.assert_allclose(f.kink_values, [2.0])

    def test_two_kinks(self):
        f = build_rod_function(1.0, [(-1.0, 0.25), (1.0, 0.75)])
        np.testing.assert_allclose(f.slopes, [-1.0, -0.5, 1.0])
        # f(-1) = 1 + 0.75*2 = 2.5, f(1) = 1 + 0.25*2 = 1.5
        np.testing.assert_allclose(f.kink_values, [2.5, 1.5])

    def test_weights_renormalized_within_tolerance(self):
        f = build_rod_function(1.0, [(0.0, 0.5 + 2e-13), (1.0, 0.5)])
        assert f.kink_a.sum() == pytest.approx(1.0, abs=1e-16)

    def test_rejections(self):
        with pytest.raises(NonIncreasingKinks):
            build_rod_function(1.0, [(1.0, 0.5), (0.0, 0.5)])
        with pytest.raises(NonPositiveWeight):
            build_rod_function(1.0, [(0.0, -0.5), (1.0, 1.5)])
        with pytest.raises(WeightsNotNormalized):
            build_rod_function(1.0, [(0.0, 0.4), (1.0, 0.4)])
        with pytest.raises(NonPositiveA):
            build_rod_function(0.0, [(0.0, 1.0)])
        with pytest.raises(InconsistentLengths):
            build_rod_function(1.0, [])
        with pytest.raises(InconsistentLengths):
            build_rod_function(float("nan"), [(0.0, 1.0)])

    def test_immutable_arrays(self):
        f = build_rod_function(2.0, [(0.0, 1.0)])
        with pytest.raises(ValueError):
            f.kink_z[0] = 1.0


class TestFromSamples:
    def test_round_trip(self):
        f = build_rod_function(1.0, [(-1.0, 0.25), (1.0, 0.75)])
        g = rod_function_from_samples(f.slopes, f.kink_z, float(f.kink_values[0]))
        assert g.A == pytest.approx(f.A, abs=1e-14)
        np.testing.assert_allclose(g.kink_a, f.kink_a)

    def test_rejections(self):
        with pytest.raises(InconsistentLengths):
            rod_function_from_samples([-1.0, 1.0], [0.0, 1.0], 2.0)
        with pytest.raises(SlopeRangeViolation):
            rod_function_from_samples([-0.9, 1.0], [0.0], 2.0)
        with pytest.raises(SlopeRangeViolation):
            rod_function_from_samples([-1.0, 0.5, 0.2, 1.0], [0.0, 1.0, 2.0], 5.0)
        with pytest.raises(NonPositiveA):
            rod_function_from_samples([-1.0, 0.0, 1.0], [0.0, 10.0], 1.0)


class TestEval:
    def test_values_and_slopes(self):
        f = build_rod_function(1.0, [(-1.0, 0.25), (1.0, 0.75)])
        v, left, right = eval_rod_function(f, -1.0)
        assert v == pytest.approx(2.5)
        assert left == pytest.approx(-1.0)
        assert right == pytest.approx(-0.5)
        v, left, right = eval_rod_function(f, 0.0)
        assert v == pytest.approx(1.0 + 0.25 + 0.75)
        assert left == right == pytest.approx(-0.5)

    @settings(max_examples=50, deadline=None)
    @given(rod_functions(), st.floats(-10.0, 10.0))
    def test_convexity_and_positivity(self, f, z):
        v, left, right = eval_rod_function(f, z)
        assert v > 0.0
        # slopes are cumulative sums of the weights, so allow float noise
        eps = 1e-12
        assert -1.0 - eps <= left <= right + eps
        assert right <= 1.0 + eps


class TestRescale:
    def test_basic(self):
        f = build_rod_function(2.0, [(0.0, 1.0)])
        g = rescale_rod_function(f, 2.0, 1.0)
        assert g.A == pytest.approx(1.0)
        np.testing.assert_allclose(g.kink_z, [-0.5])

    def test_negative_scale_reverses(self):
        f = build_rod_function(1.0, [(-1.0, 0.25), (1.0, 0.75)])
        g = rescale_rod_function(f, -1.0, 0.0)
        np.testing.assert_allclose(g.kink_z, [-1.0, 1.0])
        np.testing.assert_allclose(g.kink_a, [0.75, 0.25])

    def test_zero_scale_rejected(self):
        f = build_rod_function(2.0, [(0.0, 1.0)])
        with pytest.raises(ZeroScale):
            rescale_rod_function(f, 0.0, 1.0)

    @settings(max_examples=50, deadline=None)
    @given(rod_functions(), st.floats(0.5, 2.0), st.floats(-2.0, 2.0),
           st.floats(-5.0, 5.0))
    def test_pointwise_law(self, f, a, b, z):
        """(rescale f)(z) = |a|^-1 f(a z + b) pointwise."""
        g = rescale_rod_function(f, a, b)
        lhs = eval_rod_function(g, z)[0]
        rhs = eval_rod_function(f, a * z + b)[0] / abs(a)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(rod_functions())
    def test_center(self, f):
        g = center_rod_function(f)
        assert float(g.kink_a @ g.kink_z) == pytest.approx(0.0, abs=1e-12)
