"""Random two-shock Riemann data for sweeps and property checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gas import GasModel, RiemannData
from .riemann1d import two_shock_threshold


@dataclass(frozen=True)
class SamplerConfig:
    rho_range: tuple[float, float] = (0.1, 10.0)
    p_range: tuple[float, float] = (0.1, 10.0)
    c_v_range: tuple[float, float] = (0.2, 3.0)
    # extra compression past the two-shock threshold, in units of the mean sound speed
    overshoot_range: tuple[float, float] = (0.1, 2.0)


def _log_uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def random_two_shock(rng: np.random.Generator, cfg: SamplerConfig = SamplerConfig()) -> tuple[RiemannData, GasModel]:
    """Data with ``v_+ - v_-`` below the two-shock threshold by a sound-speed-scaled margin.

    Densities and pressures are log-uniform, ``c_v`` uniform.  The velocities
    are placed symmetrically about zero.
    """
    gas = GasModel(float(rng.uniform(*cfg.c_v_range)))
    rm, rp = (_log_uniform(rng, *cfg.rho_range) for _ in range(2))
    pm, pp = (_log_uniform(rng, *cfg.p_range) for _ in range(2))
    probe = RiemannData.from_values(rm, 0.0, pm, rp, 0.0, pp)
    c_mean = 0.5 * (np.sqrt(gas.gamma * pm / rm) + np.sqrt(gas.gamma * pp / rp))
    jump = two_shock_threshold(probe, gas) - rng.uniform(*cfg.overshoot_range) * c_mean
    return RiemannData.from_values(rm, -0.5 * jump, pm, rp, 0.5 * jump, pp), gas
