import io
import json

import numpy as np
import pytest

from reho import (FamilySpec, GridSpec, GridTooNarrowError, WaveState,
                  fd_spectrum, gram_matrix, residual)
from reho.validation import Check, analytic_spectrum, residual_of, write_report


class TestFdSpectrum:
    def test_oscillator_first_four(self):
        grid = GridSpec(12.0, 2401)  # h = 0.01
        rep = fd_spectrum(FamilySpec.reho(0), grid, 4)
        assert rep.analytic == (0.0, 2.0, 4.0, 6.0)
        # measured discretization error of the h=0.01 grid
        assert rep.max_abs_err < 2e-4

    def test_m2_first_three(self):
        rep = fd_spectrum(FamilySpec.reho(2), GridSpec(12.0, 4801), 3)
        assert rep.analytic == (0.0, 6.0, 8.0)
        assert rep.max_abs_err < 1e-3

    def test_pursey_loses_lowest_state(self):
        rep = fd_spectrum(FamilySpec.pursey(0), GridSpec(12.0, 4801), 3)
        assert rep.analytic == (2.0, 4.0, 6.0)
        assert rep.max_abs_err < 1e-3

    def test_partner_spectrum(self):
        rep = fd_spectrum(FamilySpec.partner(2), GridSpec(12.0, 4801), 3)
        assert rep.analytic == (6.0, 8.0, 10.0)
        assert rep.max_abs_err < 1e-3

    @pytest.mark.parametrize("lam", [0.5, 100.0, -2.0])
    def test_isospectrality(self, lam):
        grid = GridSpec(12.0, 4801)
        base = fd_spectrum(FamilySpec.reho(2), grid, 5)
        iso = fd_spectrum(FamilySpec.isospectral(2, lam), grid, 5)
        dev = np.abs(np.asarray(base.computed) - np.asarray(iso.computed)).max()
        assert dev < 1e-3

    def test_pursey_am_same_spectrum(self):
        grid = GridSpec(12.0, 4801)
        p = fd_spectrum(FamilySpec.pursey(2), grid, 4)
        a = fd_spectrum(FamilySpec.am(2), grid, 4)
        assert np.abs(np.asarray(p.computed) - np.asarray(a.computed)).max() < 1e-3

    def test_second_order_convergence(self):
        errs = []
        for pts in (601, 1201, 2401):  # h = 0.04, 0.02, 0.01
            errs.append(fd_spectrum(FamilySpec.reho(2), GridSpec(12.0, pts), 3).max_abs_err)
        r1, r2 = errs[0] / errs[1], errs[1] / errs[2]
        assert 3.5 < r1 < 4.5
        assert 3.5 < r2 < 4.5

    def test_grid_too_narrow(self):
        with pytest.raises(GridTooNarrowError):
            fd_spectrum(FamilySpec.reho(4), GridSpec(6.0, 1201), 5)

    def test_grid_spec_validation(self):
        with pytest.raises(ValueError):
            GridSpec(12.0, 500)  # even
        with pytest.raises(ValueError):
            GridSpec(12.0, 301)  # too few
        assert GridSpec(12.0, 4801).h == pytest.approx(0.005)


class TestResidual:
    def test_reho_excited(self):
        st = WaveState(FamilySpec.reho(2), 0)
        assert residual(st, GridSpec(12.0, 4801)) < 1e-6

    def test_iso_ground(self):
        st = WaveState(FamilySpec.isospectral(0, 0.1), -1)
        assert residual(st, GridSpec(12.0, 4801)) < 1e-6

    @pytest.mark.parametrize("spec,n", [
        (FamilySpec.pursey(2), 0),
        (FamilySpec.am(2), 1),
        (FamilySpec.isospectral(4, -1.5), 0),
        (FamilySpec.partner(0), 2),
    ])
    def test_other_families(self, spec, n):
        assert residual(WaveState(spec, n), GridSpec(12.0, 4801)) < 1e-6

    def test_zero_function(self):
        grid = GridSpec(12.0, 1201)
        val = residual_of(lambda x: np.zeros_like(x), lambda x: x * x, 1.0, grid)
        assert val == 0.0


class TestGramMatrix:
    def test_reho_identity(self):
        g = gram_matrix(FamilySpec.reho(2), 4)
        assert np.abs(g - np.eye(4)).max() < 1e-6
        assert np.allclose(np.diag(g), 1.0, atol=1e-8)

    def test_iso_identity(self):
        g = gram_matrix(FamilySpec.isospectral(0, 1.0), 3)
        assert np.abs(g - np.eye(3)).max() < 1e-6

    def test_pursey_identity(self):
        g = gram_matrix(FamilySpec.pursey(2), 3)
        assert np.abs(g - np.eye(3)).max() < 1e-6

    def test_k_capped(self):
        with pytest.raises(ValueError):
            gram_matrix(FamilySpec.reho(0), 7)


class TestCheckPlumbing:
    def test_analytic_spectrum_shapes(self):
        assert analytic_spectrum(FamilySpec.reho(2), 3) == [0.0, 6.0, 8.0]
        assert analytic_spectrum(FamilySpec.am(2), 2) == [6.0, 8.0]

    def test_write_report_roundtrip(self):
        checks = [Check("demo", FamilySpec.reho(0), None, 0.0, 1e-6),
                  Check("demo2", None, 1, 5.0, 1e-6)]
        buf = io.StringIO()
        ok = write_report(checks, buf)
        assert not ok  # second check fails
        lines = [json.loads(line) for line in buf.getvalue().splitlines()]
        assert lines[0]["pass"] is True and lines[1]["pass"] is False
        assert lines[0]["check"] == "demo"
