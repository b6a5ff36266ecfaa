"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
PASS/FAIL lines with their measured figures.
"""

import math
import time

import numpy as np
import pytest

from reho import (FamilySpec, GridSpec, WaveState, energy, expect_x, expect_x2,
                  fd_spectrum, gram_matrix, hermite, integrate, pseudo_hermite,
                  default_config, epsilon, exceptional_hermite, isospectral_potential,
                  reho_potential, residual, superpotential, superpotential_dx,
                  uncertainty)
from reho.polynomials import _signfree_hermite
from reho.reference_values import deviation_for, load, table

REF_TOL = 2e-3
_ALL_PRODUCTS: list[float] = []


def _unc(state):
    rep = uncertainty(state)
    _ALL_PRODUCTS.append(rep.dx_dp)
    return rep


def _verdict(criterion, ok, detail):
    print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{criterion}: {detail}"


def _spec_of_row(row):
    if row["family"] == "isospectral":
        return FamilySpec.isospectral(row["m"], row["lambda"])
    return FamilySpec(row["family"], row["m"])


def test_criterion_1_reho_uncertainty_table():
    t0 = time.monotonic()
    worst = 0.0
    for row in table("un-re")["rows"]:
        rep = _unc(WaveState(_spec_of_row(row), row["n"]))
        worst = max(worst, abs(rep.dx_dp - row["value"]))
    elapsed = time.monotonic() - t0
    ok = worst <= REF_TOL and elapsed < 10.0
    _verdict("criterion 1 (un-re table)", ok,
             f"max|diff|={worst:.2e} tol={REF_TOL:g}, {elapsed:.1f}s < 10s")


def test_criterion_2_isospectral_ground_table():
    worst_ok = 0.0
    flagged = []
    named = {}
    for row in table("un-iso")["rows"]:
        rep = _unc(WaveState(_spec_of_row(row), row["n"]))
        diff = abs(rep.dx_dp - row["value"])
        dev = deviation_for("un-iso", row["m"], row["lambda"])
        if dev is not None:
            # documented discrepancy: must reproduce our recorded value
            flagged.append((row["m"], row["lambda"], rep.dx_dp, dev["recomputed"]))
            assert abs(rep.dx_dp - dev["recomputed"]) < 2e-4
        else:
            worst_ok = max(worst_ok, diff)
        if row["lambda"] == 100.0 and row["m"] in (0, 2):
            named[row["m"]] = rep.dx_dp
    ok = (worst_ok <= REF_TOL and len(flagged) == 3
          and abs(named[0] - 0.5000) <= REF_TOL
          and abs(named[2] - 0.5172) <= REF_TOL)
    _verdict("criterion 2 (un-iso table)", ok,
             f"15 cells max|diff|={worst_ok:.2e}, 3 flagged cells reproduce "
             f"recorded values, lam=100 cells: {named[0]:.4f}/{named[2]:.4f}")


def test_criterion_3_pursey_am_table():
    worst = 0.0
    worst_pair = 0.0
    for row in table("un-pam")["rows"]:
        p = _unc(WaveState(FamilySpec.pursey(row["m"]), row["n"]))
        a = _unc(WaveState(FamilySpec.am(row["m"]), row["n"]))
        worst = max(worst, abs(p.dx_dp - row["value"]))
        worst_pair = max(worst_pair, abs(p.dx_dp - a.dx_dp))
    ok = worst <= REF_TOL and worst_pair <= 1e-8
    _verdict("criterion 3 (un-pam table)", ok,
             f"max|diff|={worst:.2e} tol={REF_TOL:g}, "
             f"max|pursey-am|={worst_pair:.1e} tol=1e-8")


def test_criterion_4_moment_appendices():
    worst = 0.0
    for row in table("appendix-a")["rows"]:
        st = WaveState(_spec_of_row(row), row["n"])
        worst = max(worst, abs(expect_x(st) - row["mean_x"]),
                    abs(expect_x2(st) - row["mean_x2"]))
    for row in table("appendix-b")["rows"]:
        st = WaveState(FamilySpec(row["family"], row["m"]), row["n"])
        worst = max(worst, abs(expect_x(st) - row["mean_x"]),
                    abs(expect_x2(st) - row["mean_x2"]))
    # reflection law lam -> -(1+lam)
    worst_refl = 0.0
    for m in (0, 2, 4):
        for lam in (1e-3, 0.1, 100.0):
            s1 = WaveState(FamilySpec.isospectral(m, lam), -1)
            s2 = WaveState(FamilySpec.isospectral(m, -(1.0 + lam)), -1)
            worst_refl = max(worst_refl,
                             abs(expect_x(s2) + expect_x(s1)),
                             abs(expect_x2(s2) - expect_x2(s1)))
    ok = worst <= REF_TOL and worst_refl < 1e-8
    _verdict("criterion 4 (moment appendices)", ok,
             f"max|diff|={worst:.2e} tol={REF_TOL:g}, "
             f"reflection law residual={worst_refl:.1e}")


def test_criterion_5_finite_difference_spectra():
    grid = GridSpec(12.0, 4801)
    worst = 0.0
    worst_time = 0.0
    for m in (0, 2, 4):
        t0 = time.monotonic()
        base = fd_spectrum(FamilySpec.reho(m), grid, 5)
        worst_time = max(worst_time, time.monotonic() - t0)
        expected = [0.0] + [2.0 * (n + m + 1) for n in range(4)]
        assert base.analytic == tuple(expected)
        worst = max(worst, base.max_abs_err)
        for lam in (0.5, 100.0, -2.0):
            t0 = time.monotonic()
            iso = fd_spectrum(FamilySpec.isospectral(m, lam), grid, 5)
            worst_time = max(worst_time, time.monotonic() - t0)
            worst = max(worst, float(np.abs(np.asarray(iso.computed)
                                            - np.asarray(base.computed)).max()))
        for fam in (FamilySpec.pursey(m), FamilySpec.am(m)):
            t0 = time.monotonic()
            rep = fd_spectrum(fam, grid, 4)
            worst_time = max(worst_time, time.monotonic() - t0)
            worst = max(worst, float(np.abs(np.asarray(rep.computed)
                                            - np.asarray(base.computed[1:])).max()))
    ok = worst <= 1e-3 and worst_time < 30.0
    _verdict("criterion 5 (fd spectra)", ok,
             f"max spectral error {worst:.2e} tol=1e-3, "
             f"slowest family {worst_time:.1f}s < 30s")


def test_criterion_6_property_suite():
    failures = []

    # exact polynomial identities
    for n in range(1, 30):
        if hermite(n + 1) != hermite(n).shift_up() * 2 - (2 * n) * hermite(n - 1):
            failures.append(f"hermite recurrence n={n}")
    for m in range(2, 31, 2):
        if pseudo_hermite(m).derivative() != (2 * m) * _signfree_hermite(m - 1):
            failures.append(f"derivative identity m={m}")

    # nodeless denominators
    rng = np.random.default_rng(0)
    xs = rng.uniform(-50, 50, 10_000)
    for m in range(0, 22, 2):
        if not np.all(pseudo_hermite(m)(xs) > 0):
            failures.append(f"positivity m={m}")

    # exceptional-system orthogonality, normalized, 1e-6
    for m in (0, 2, 4):
        p = pseudo_hermite(m)
        cfg = default_config(40.0)
        ys = [exceptional_hermite(m, j - 1) for j in range(6)]
        gram = np.empty((6, 6))
        for j in range(6):
            for k in range(j, 6):
                gram[j, k] = gram[k, j] = integrate(
                    lambda x: ys[j](x) * ys[k](x) * np.exp(-x * x) / p(x) ** 2, cfg)
        norm = np.sqrt(np.diag(gram))
        off = gram / np.outer(norm, norm) - np.eye(6)
        if np.abs(off).max() > 1e-6:
            failures.append(f"X_m orthogonality m={m}: {np.abs(off).max():.1e}")

    # state orthonormality
    for spec in (FamilySpec.reho(2), FamilySpec.isospectral(0, 1.0),
                 FamilySpec.pursey(2), FamilySpec.am(4)):
        g = gram_matrix(spec, 4)
        if np.abs(g - np.eye(4)).max() > 1e-6:
            failures.append(f"gram {spec.describe()}: {np.abs(g - np.eye(4)).max():.1e}")

    # Schroedinger residuals
    grid = GridSpec(12.0, 4801)
    for spec, ns in ((FamilySpec.reho(0), (-1, 0, 1)),
                     (FamilySpec.reho(2), (-1, 0, 1)),
                     (FamilySpec.reho(4), (-1, 1)),
                     (FamilySpec.isospectral(0, 0.1), (-1, 0)),
                     (FamilySpec.isospectral(2, -1.5), (-1, 0)),
                     (FamilySpec.pursey(2), (0, 1)),
                     (FamilySpec.am(2), (0,))):
        for n in ns:
            r = residual(WaveState(spec, n), grid)
            if r > 1e-6:
                failures.append(f"residual {spec.describe()} n={n}: {r:.1e}")

    # SUSY identities
    xg = np.linspace(-6, 6, 1001)
    for m in (0, 2, 4, 6):
        dev = np.abs(superpotential(m, xg) ** 2 - superpotential_dx(m, xg)
                     + epsilon(m) - reho_potential(m, xg)).max()
        if dev > 1e-9:
            failures.append(f"susy m={m}: {dev:.1e}")

    # large-lambda convergence of the deformed potential
    sups = []
    for lam in (10.0, 1e2, 1e3, 1e4, 1e6):
        spec = FamilySpec.isospectral(2, lam)
        sups.append(np.abs(isospectral_potential(spec, xg) - reho_potential(2, xg)).max())
    if not all(a > b for a, b in zip(sups, sups[1:])):
        failures.append("lambda-limit not monotone")
    if sups[-1] > 1e-4:
        failures.append(f"lambda=1e6 deviation {sups[-1]:.1e}")

    # Heisenberg bound for every product computed in this suite
    for st in (WaveState(FamilySpec.reho(8), 0),
               WaveState(FamilySpec.isospectral(4, 1e-12), -1),
               WaveState(FamilySpec.am(0), 3)):
        _unc(st)
    if not _ALL_PRODUCTS:
        failures.append("no uncertainty products recorded")
    low = min(_ALL_PRODUCTS)
    if low < 0.5 - 1e-9:
        failures.append(f"heisenberg bound violated: {low}")

    _verdict("criterion 6 (property suite)", not failures,
             f"{len(_ALL_PRODUCTS)} products, min dx*dp={low:.6f}; "
             + ("all properties hold" if not failures else "; ".join(failures)))


def test_criterion_7_uncertainty_trends():
    ground = [_unc(WaveState(FamilySpec.reho(m), -1)).dx_dp for m in (0, 2, 4)]
    increasing = ground[0] < ground[1] < ground[2]
    # opposite monotonicity between m=0 and m=8, alternating with n parity
    flips = []
    for n in range(0, 4):
        u0 = _unc(WaveState(FamilySpec.reho(0), n)).dx_dp
        u8 = _unc(WaveState(FamilySpec.reho(8), n)).dx_dp
        flips.append(u8 > u0 if n % 2 == 0 else u8 < u0)
    ok = increasing and all(flips)
    _verdict("criterion 7 (trends)", ok,
             f"ground {ground[0]:.4f}<{ground[1]:.4f}<{ground[2]:.4f}; "
             f"m=0 vs m=8 parity alternation {flips}")
