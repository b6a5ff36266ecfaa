"""Rationally extended harmonic oscillator family.

Exact exceptional-Hermite polynomial machinery, closed-form potentials and
eigenfunctions of the rational extensions, their one-parameter isospectral
deformations (including the Pursey and Abraham-Moses limits), position and
momentum moments with the Heisenberg product, and independent
finite-difference oracles for all of it.
"""

from .expectation import (UncertaintyReport, expect_p2, expect_p2_energy_route,
                          expect_x, expect_x2, uncertainty)
from .polynomials import Polynomial, exceptional_hermite, hermite, pseudo_hermite
from .potentials import (FamilySpec, SingularLambdaError, am_potential, epsilon,
                         ground_density, ground_state_cdf, isospectral_potential,
                         log_shift, partner_potential, potential, pursey_potential,
                         reho_potential, superpotential, superpotential_dx)
from .quadrature import NonConvergenceError, QuadConfig, default_config, integrate
from .states import (WaveState, energy, normalization_audit, psi, psi_am, psi_dx,
                     psi_iso, psi_partner, psi_pursey, psi_reho)
from .validation import (GridSpec, GridTooNarrowError, SpectrumReport, fd_spectrum,
                         gram_matrix, residual)

__version__ = "0.1.0"

__all__ = [
    "Polynomial", "hermite", "pseudo_hermite", "exceptional_hermite",
    "FamilySpec", "SingularLambdaError", "epsilon", "reho_potential",
    "superpotential", "superpotential_dx", "partner_potential",
    "ground_state_cdf", "ground_density", "log_shift", "isospectral_potential",
    "pursey_potential", "am_potential", "potential",
    "WaveState", "energy", "psi", "psi_dx", "psi_reho", "psi_iso",
    "psi_pursey", "psi_am", "psi_partner", "normalization_audit",
    "QuadConfig", "NonConvergenceError", "integrate", "default_config",
    "UncertaintyReport", "expect_x", "expect_x2", "expect_p2",
    "expect_p2_energy_route", "uncertainty",
    "GridSpec", "GridTooNarrowError", "SpectrumReport", "fd_spectrum",
    "residual", "gram_matrix",
]
