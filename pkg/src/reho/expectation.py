"""Position/momentum moments and the Heisenberg product for any state.

<p> vanishes identically (real bound states), so the product reduces to
sqrt((<x^2> - <x>^2) <p^2>).  <p^2> is evaluated as the integral of the
squared analytic derivative and can be cross-checked against the energy
identity <p^2> = E - <V - eps>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import potentials, states
from .potentials import epsilon, potential
from .quadrature import NonConvergenceError, QuadConfig, default_config, integrate
from .states import WaveState, energy, feature_points, psi, psi_dx

__all__ = [
    "UncertaintyReport",
    "expect_x",
    "expect_x2",
    "expect_p2",
    "expect_p2_energy_route",
    "uncertainty",
]


@dataclass(frozen=True)
class UncertaintyReport:
    """Moments and uncertainty product of one state (hbar = 1 units)."""

    state: WaveState
    mean_x: float
    mean_x2: float
    mean_p2: float
    dx_dp: float

    @property
    def dx(self) -> float:
        return math.sqrt(self.mean_x2 - self.mean_x**2)

    @property
    def dp(self) -> float:
        return math.sqrt(self.mean_p2)

    def as_dict(self) -> dict:
        spec = self.state.spec
        return {
            "family": spec.kind,
            "m": spec.m,
            "lambda": spec.lam,
            "n": self.state.n,
            "energy": energy(self.state),
            "mean_x": self.mean_x,
            "mean_x2": self.mean_x2,
            "mean_p2": self.mean_p2,
            "dx": self.dx,
            "dp": self.dp,
            "dx_dp": self.dx_dp,
        }


def _cfg(state: WaveState, cfg: QuadConfig | None) -> QuadConfig:
    return cfg if cfg is not None else default_config(energy(state))


def expect_x(state: WaveState, cfg: QuadConfig | None = None) -> float:
    """First position moment; zero for the parity-symmetric families."""
    bc = feature_points(state)
    return integrate(lambda x: x * psi(state, x) ** 2, _cfg(state, cfg), breakpoints=bc)


def expect_x2(state: WaveState, cfg: QuadConfig | None = None) -> float:
    bc = feature_points(state)
    return integrate(lambda x: x * x * psi(state, x) ** 2, _cfg(state, cfg), breakpoints=bc)


def expect_p2(state: WaveState, cfg: QuadConfig | None = None) -> float:
    """<p^2> as the integral of the squared analytic derivative."""
    bc = feature_points(state)
    return integrate(lambda x: psi_dx(state, x) ** 2, _cfg(state, cfg), breakpoints=bc)


def expect_p2_energy_route(state: WaveState, cfg: QuadConfig | None = None) -> float:
    """Independent evaluation of <p^2> through E - <V - eps>."""
    spec = state.spec
    bc = feature_points(state)
    veff = integrate(
        lambda x: (potential(spec, x) - epsilon(spec.m)) * psi(state, x) ** 2,
        _cfg(state, cfg),
        breakpoints=bc,
    )
    return energy(state) - veff


def uncertainty(state: WaveState, cfg: QuadConfig | None = None) -> UncertaintyReport:
    """Full uncertainty report; uses the general (shifted-mean) variance so
    the asymmetric deformed states are handled correctly."""
    mean_x = expect_x(state, cfg)
    mean_x2 = expect_x2(state, cfg)
    mean_p2 = expect_p2(state, cfg)
    var_x = mean_x2 - mean_x * mean_x
    if var_x <= 0.0 or mean_p2 <= 0.0:
        raise NonConvergenceError(
            f"non-positive variance for {state.spec.describe()} n={state.n}: "
            f"var_x={var_x:.3e}, mean_p2={mean_p2:.3e}"
        )
    return UncertaintyReport(
        state=state,
        mean_x=mean_x,
        mean_x2=mean_x2,
        mean_p2=mean_p2,
        dx_dp=math.sqrt(var_x * mean_p2),
    )
