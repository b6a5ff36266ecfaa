"""Independent numerical oracles for the analytic machinery.

Nothing here reuses the closed-form spectra or wavefunction identities it
checks: eigenvalues come from a symmetric tridiagonal discretization of the
Hamiltonian, residuals from a finite-difference stencil applied to the
evaluated states, and orthonormality from direct quadrature.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .expectation import expect_p2, expect_p2_energy_route, uncertainty
from .potentials import (ISOSPECTRAL, REHO, FamilySpec, epsilon, potential,
                         reho_potential, superpotential, superpotential_dx)
from .quadrature import default_config, integrate
from .states import WaveState, energy, feature_points, psi

__all__ = [
    "GridTooNarrowError",
    "GridSpec",
    "SpectrumReport",
    "fd_spectrum",
    "residual",
    "gram_matrix",
    "default_checks",
    "run_checks",
    "write_report",
]


class GridTooNarrowError(ValueError):
    """The classically allowed region reaches too close to the grid edge."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform Dirichlet grid on [-half_width, half_width]."""

    half_width: float = 12.0
    points: int = 4801

    def __post_init__(self):
        if self.points < 501 or self.points % 2 == 0:
            raise ValueError("points must be an odd integer >= 501")
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / (self.points - 1)

    def interior(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.points)[1:-1]


@dataclass(frozen=True)
class SpectrumReport:
    family: FamilySpec
    computed: tuple
    analytic: tuple
    max_abs_err: float


def analytic_spectrum(spec: FamilySpec, k: int) -> list[float]:
    """Lowest k eigenvalues from the closed-form energy rules."""
    if spec.kind in (REHO, ISOSPECTRAL):
        ns = range(-1, k - 1)
    else:
        ns = range(0, k)
    return [energy(WaveState(spec, n)) for n in ns]


def fd_spectrum(spec: FamilySpec, grid: GridSpec, k: int) -> SpectrumReport:
    """Lowest k eigenvalues of -d2/dx2 + (V - eps) on the grid.

    Second-order central differences give a symmetric tridiagonal matrix
    whose extreme eigenvalues are obtained by bisection + inverse iteration.
    """
    analytic = analytic_spectrum(spec, k)
    x = grid.interior()
    v = potential(spec, x) - epsilon(spec.m)
    # tail criterion: the top state's turning point must sit well inside
    emax = analytic[-1]
    allowed = np.abs(x[v <= emax])
    turning = float(allowed.max()) if allowed.size else 0.0
    if turning > grid.half_width - 4.0:
        raise GridTooNarrowError(
            f"turning point {turning:.2f} within 4 of the boundary "
            f"{grid.half_width:.2f} for {spec.describe()}"
        )
    h2 = grid.h * grid.h
    diag = 2.0 / h2 + v
    off = np.full(len(x) - 1, -1.0 / h2)
    vals = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1),
                            eigvals_only=True)
    return SpectrumReport(
        family=spec,
        computed=tuple(float(t) for t in vals),
        analytic=tuple(analytic),
        max_abs_err=float(np.abs(np.asarray(vals) - np.asarray(analytic)).max()),
    )


def residual_of(fn, veff, e_val: float, grid: GridSpec) -> float:
    """Schroedinger residual of an arbitrary function on the grid:
    max |(-psi'' + veff*psi - E*psi)| / max|psi|, five-point second
    derivative."""
    x = grid.interior()
    f = np.asarray(fn(x), dtype=float)
    v = np.asarray(veff(x), dtype=float)
    h2 = grid.h * grid.h
    lap = (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / (12.0 * h2)
    res = -lap + (v[2:-2] - e_val) * f[2:-2]
    peak = float(np.abs(f).max())
    if peak == 0.0:
        return 0.0
    return float(np.abs(res).max() / peak)


def residual(state: WaveState, grid: GridSpec | None = None) -> float:
    """Normalized Schroedinger residual of one evaluated eigenfunction."""
    if grid is None:
        grid = GridSpec(half_width=max(12.0, math.sqrt(2.0 * energy(state)) + 8.0))
    spec = state.spec
    return residual_of(
        lambda x: psi(state, x),
        lambda x: potential(spec, x) - epsilon(spec.m),
        energy(state),
        grid,
    )


def gram_matrix(spec: FamilySpec, k: int) -> np.ndarray:
    """Pairwise L2 inner products of the first k states of one family."""
    if k > 6:
        raise ValueError("k must be <= 6")
    lo = -1 if spec.kind in (REHO, ISOSPECTRAL) else 0
    sts = [WaveState(spec, n) for n in range(lo, lo + k)]
    bps = sorted({p for s in sts for p in feature_points(s)})
    cfg = default_config(max(energy(s) for s in sts))
    out = np.eye(k)
    for i in range(k):
        for j in range(i, k):
            val = integrate(lambda x: psi(sts[i], x) * psi(sts[j], x), cfg,
                            breakpoints=bps)
            out[i, j] = out[j, i] = val
    return out


# --------------------------------------------------------------------------
# batch check suite (machine-readable)
# --------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    family: FamilySpec | None
    n: int | None
    value: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = abs(self.value) <= self.tolerance

    def as_record(self) -> dict:
        return {
            "check": self.name,
            "family": self.family.kind if self.family else None,
            "m": self.family.m if self.family else None,
            "lambda": self.family.lam if self.family else None,
            "n": self.n,
            "value": self.value,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def default_checks(ms=(0, 2, 4), lams=(0.5, 100.0, -2.0)) -> list[Check]:
    """Curated oracle suite: spectra, residuals, orthonormality, SUSY
    identities and the Heisenberg bound."""
    checks: list[Check] = []
    grid = GridSpec(12.0, 4801)
    xg = np.linspace(-6.0, 6.0, 1001)

    for m in ms:
        reho = FamilySpec.reho(m)
        # finite-difference spectrum against the closed form
        rep = fd_spectrum(reho, grid, 5)
        checks.append(Check("fd_spectrum", reho, None, rep.max_abs_err, 1e-3))
        for lam in lams:
            iso = FamilySpec.isospectral(m, lam)
            rep_iso = fd_spectrum(iso, grid, 5)
            checks.append(Check("fd_spectrum", iso, None, rep_iso.max_abs_err, 1e-3))
            dev = float(np.abs(np.asarray(rep_iso.computed) - np.asarray(rep.computed)).max())
            checks.append(Check("isospectrality", iso, None, dev, 1e-3))
        pur, am = FamilySpec.pursey(m), FamilySpec.am(m)
        rep_p = fd_spectrum(pur, grid, 4)
        rep_a = fd_spectrum(am, grid, 4)
        checks.append(Check("fd_spectrum", pur, None, rep_p.max_abs_err, 1e-3))
        checks.append(Check("fd_spectrum", am, None, rep_a.max_abs_err, 1e-3))
        checks.append(Check(
            "pursey_equals_am", pur, None,
            float(np.abs(np.asarray(rep_p.computed) - np.asarray(rep_a.computed)).max()),
            1e-3,
        ))
        checks.append(Check(
            "ground_state_deleted", pur, None,
            float(np.abs(np.asarray(rep_p.computed) - np.asarray(rep.computed[1:])).max()),
            1e-3,
        ))

        # SUSY algebra on a grid
        susy = (superpotential(m, xg) ** 2 - superpotential_dx(m, xg)
                + epsilon(m) - reho_potential(m, xg))
        checks.append(Check("susy_identity", reho, None, float(np.abs(susy).max()), 1e-9))

        # residuals and orthonormality
        for n in (-1, 0, 1):
            st = WaveState(reho, n)
            checks.append(Check("residual", reho, n, residual(st, grid), 1e-6))
        gm = gram_matrix(reho, 4)
        checks.append(Check("gram_identity", reho, None,
                            float(np.abs(gm - np.eye(4)).max()), 1e-6))
        iso_ref = FamilySpec.isospectral(m, lams[0])
        gm_iso = gram_matrix(iso_ref, 3)
        checks.append(Check("gram_identity", iso_ref, None,
                            float(np.abs(gm_iso - np.eye(3)).max()), 1e-6))
        for n in (-1, 0):
            st = WaveState(iso_ref, n)
            checks.append(Check("residual", iso_ref, n, residual(st, grid), 1e-6))

        # momentum moment consistency and Heisenberg bound
        for spec_u, n in ((reho, -1), (iso_ref, -1), (pur, 0), (am, 0)):
            st = WaveState(spec_u, n)
            gap = expect_p2(st) - expect_p2_energy_route(st)
            checks.append(Check("p2_route_consistency", spec_u, n, gap, 1e-7))
            rep_u = uncertainty(st)
            checks.append(Check("heisenberg_bound", spec_u, n,
                                min(0.0, rep_u.dx_dp - 0.5), 1e-9))
    return checks


def run_checks(ms=(0, 2, 4), lams=(0.5, 100.0, -2.0)) -> tuple[list[Check], float]:
    t0 = time.monotonic()
    checks = default_checks(ms, lams)
    return checks, time.monotonic() - t0


def write_report(checks: list[Check], stream) -> bool:
    """Emit one JSON record per check; returns overall pass flag."""
    ok = True
    for c in checks:
        stream.write(json.dumps(c.as_record()) + "\n")
        ok = ok and c.passed
    return ok
