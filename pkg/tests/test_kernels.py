"""Agreement between the jitted kernels and the pure-Python fallbacks."""

import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from alfrod import _kernels
from alfrod.examples import chen_teo
from alfrod.metric import h_metric_constant

ROD = chen_teo(0.3)
ARGS = (ROD.f.A, ROD.f.kink_z, ROD.f.kink_a)
HC = h_metric_constant(ROD.f)


class TestInProcessAgreement:
    """The exported kernels and the *_py fallbacks compute the same numbers."""

    def test_u0_terms(self):
        a = _kernels.u0_terms(1.3, -0.7)
        b = _kernels.u0_terms_py(1.3, -0.7)
        np.testing.assert_allclose(a, b, rtol=1e-15)

    def test_potential_terms(self):
        a = _kernels.potential_terms(*ARGS, 2.0, 0.5)
        b = _kernels.potential_terms_py(*ARGS, 2.0, 0.5)
        np.testing.assert_allclose(a, b, rtol=1e-15)

    def test_potential_grid(self):
        rhos = np.array([0.5, 1.0, 3.0])
        zs = np.array([-1.0, 0.3, 2.0])
        a = _kernels.potential_grid(*ARGS, rhos, zs)
        b = _kernels.potential_grid_py(*ARGS, rhos, zs)
        np.testing.assert_allclose(a, b, rtol=1e-15)

    def test_metric_matrix(self):
        a = _kernels.metric_matrix(*ARGS, HC, True, 2.0, -1.0)
        b = _kernels.metric_matrix_py(*ARGS, HC, True, 2.0, -1.0)
        np.testing.assert_allclose(a, b, rtol=1e-14)

    def test_ricci_fd(self):
        a = _kernels.ricci_fd(*ARGS, HC, False, 2.0, -1.0, 1e-3)
        b = _kernels.ricci_fd_py(*ARGS, HC, False, 2.0, -1.0, 1e-3)
        np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-13)

    def test_scalar_curvature_fd(self):
        a = _kernels.scalar_curvature_fd(*ARGS, HC, True, 2.0, -1.0, 1e-3, True)
        b = _kernels.scalar_curvature_fd_py(*ARGS, HC, True, 2.0, -1.0, 1e-3, True)
        assert a == pytest.approx(b, rel=1e-8, abs=1e-12)


class TestEnvFlagFallback:
    def test_disable_flag_selects_pure_path(self):
        script = textwrap.dedent("""
            from alfrod import _kernels
            from alfrod.curvature import ricci_fd
            from alfrod.examples import chen_teo
            assert not _kernels.NUMBA_ENABLED
            assert _kernels.potential_terms.__code__ is _kernels.potential_terms_py.__code__
            rep = ricci_fd(chen_teo(0.3).f, 2.0, -1.0)
            print(format(rep.ricci_max_abs, ".17g"))
        """)
        env = dict(os.environ, ALFROD_DISABLE_NUMBA="1")
        proc = subprocess.run([sys.executable, "-c", script], env=env,
                              capture_output=True, text=True, check=True)
        pure_value = float(proc.stdout.strip())
        from alfrod.curvature import ricci_fd
        here = ricci_fd(chen_teo(0.3).f, 2.0, -1.0).ricci_max_abs
        assert pure_value == pytest.approx(here, rel=1e-8, abs=1e-13)
