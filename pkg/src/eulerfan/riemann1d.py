"""Exact 1D Riemann solution for the 1-shock / contact / 3-shock pattern.

Only data for which both nonlinear waves are admissible shocks are handled;
rarefaction patterns are rejected with :class:`NotTwoShock`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import NoBracket, NotTwoShock
from .gas import GasModel, RiemannData

MAX_DOUBLINGS = 200
CONTACT_RTOL = 1e-10


def two_shock_threshold(data: RiemannData, gas: GasModel) -> float:
    """Largest velocity jump v+ - v- (exclusive) giving two shocks."""
    l, r = data.left, data.right
    cv = gas.c_v
    if l.p <= r.p:
        return -(r.p - l.p) * math.sqrt(2 * cv / (l.rho * (l.p + (2 * cv + 1) * r.p)))
    return -(l.p - r.p) * math.sqrt(2 * cv / (r.rho * (r.p + (2 * cv + 1) * l.p)))


def is_two_shock(data: RiemannData, gas: GasModel) -> bool:
    return data.right.v2 - data.left.v2 < two_shock_threshold(data, gas)


def _hugoniot_term(p_mid: float, rho: float, p: float, cv: float) -> float:
    return (p_mid - p) / math.sqrt(rho * (p + (2 * cv + 1) * p_mid))


def pressure_function(p_mid: float, data: RiemannData, gas: GasModel) -> float:
    """Defining function of the middle pressure; its root is p_M.

    Strictly decreasing in ``p_mid`` on ``(max(p-, p+), inf)``.
    """
    l, r = data.left, data.right
    cv = gas.c_v
    lhs = -math.sqrt(2 * cv) * (
        _hugoniot_term(p_mid, l.rho, l.p, cv) + _hugoniot_term(p_mid, r.rho, r.p, cv)
    )
    return lhs - (r.v2 - l.v2)


def solve_p_m(data: RiemannData, gas: GasModel) -> float:
    if not is_two_shock(data, gas):
        raise NotTwoShock(
            "data do not produce two shocks",
            jump=data.right.v2 - data.left.v2,
            threshold=two_shock_threshold(data, gas),
        )

    def f(p):
        return pressure_function(p, data, gas)

    lo = max(data.left.p, data.right.p)
    hi = 2.0 * lo
    for _ in range(MAX_DOUBLINGS):
        if f(hi) < 0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NoBracket("upper bracket for p_M not found", last_upper=hi)

    p_m = brentq(f, lo, hi, xtol=1e-15, rtol=4 * 2.220446049250313e-16, maxiter=500)
    return p_m


@dataclass(frozen=True)
class TwoShockFan:
    p_M: float
    v_M: float
    rho_Mminus: float
    rho_Mplus: float
    sigma_minus: float
    sigma_plus: float
    contact_speed: float
    has_contact: bool

    def to_dict(self) -> dict:
        return {
            "p_M": self.p_M,
            "v_M": self.v_M,
            "rho_Mminus": self.rho_Mminus,
            "rho_Mplus": self.rho_Mplus,
            "sigma_minus": self.sigma_minus,
            "sigma_plus": self.sigma_plus,
            "contact_speed": self.contact_speed,
            "has_contact": self.has_contact,
        }


def fan_from_pressure(p_m: float, data: RiemannData, gas: GasModel) -> TwoShockFan:
    """Closed-form middle states and wave speeds for a given middle pressure."""
    l, r = data.left, data.right
    cv = gas.c_v
    k = 2 * cv + 1
    v_m = l.v2 - math.sqrt(2 * cv) * _hugoniot_term(p_m, l.rho, l.p, cv)
    rho_mm = l.rho * (l.p + k * p_m) / (p_m + k * l.p)
    rho_mp = r.rho * (r.p + k * p_m) / (p_m + k * r.p)
    sigma_m = (l.rho * l.v2 - rho_mm * v_m) / (l.rho - rho_mm)
    sigma_p = (r.rho * r.v2 - rho_mp * v_m) / (r.rho - rho_mp)
    has_contact = abs(rho_mm - rho_mp) > CONTACT_RTOL * (rho_mm + rho_mp)
    return TwoShockFan(p_m, v_m, rho_mm, rho_mp, sigma_m, sigma_p, v_m, has_contact)


def solve_two_shock_fan(data: RiemannData, gas: GasModel) -> TwoShockFan:
    return fan_from_pressure(solve_p_m(data, gas), data, gas)


def _rel(lhs_terms, rhs_terms) -> tuple[float, float]:
    raw = sum(lhs_terms) - sum(rhs_terms)
    scale = 1.0 + max(abs(t) for t in (*lhs_terms, *rhs_terms))
    return raw, raw / scale


def jump_residuals(fan: TwoShockFan, data: RiemannData, gas: GasModel) -> dict[str, tuple[float, float]]:
    """Mass, momentum and energy jump conditions across both shocks.

    Returns ``name -> (raw, relative)`` where relative divides by one plus
    the largest absolute term of the equation.
    """
    l, r = data.left, data.right
    cv = gas.c_v
    vm, pm = fan.v_M, fan.p_M
    rmm, rmp = fan.rho_Mminus, fan.rho_Mplus
    sm, sp = fan.sigma_minus, fan.sigma_plus

    def energy(rho, v, p):
        return 0.5 * rho * v * v + cv * p

    def energy_flux(rho, v, p):
        return (0.5 * rho * v * v + (cv + 1) * p) * v

    out = {}
    out["l1"] = _rel([sm * l.rho, -sm * rmm], [l.rho * l.v2, -rmm * vm])
    out["l2"] = _rel(
        [sm * l.rho * l.v2, -sm * rmm * vm],
        [l.rho * l.v2**2, -rmm * vm**2, l.p, -pm],
    )
    out["l3"] = _rel(
        [sm * energy(l.rho, l.v2, l.p), -sm * energy(rmm, vm, pm)],
        [energy_flux(l.rho, l.v2, l.p), -energy_flux(rmm, vm, pm)],
    )
    out["r1"] = _rel([sp * rmp, -sp * r.rho], [rmp * vm, -r.rho * r.v2])
    out["r2"] = _rel(
        [sp * rmp * vm, -sp * r.rho * r.v2],
        [rmp * vm**2, -r.rho * r.v2**2, pm, -r.p],
    )
    out["r3"] = _rel(
        [sp * energy(rmp, vm, pm), -sp * energy(r.rho, r.v2, r.p)],
        [energy_flux(rmp, vm, pm), -energy_flux(r.rho, r.v2, r.p)],
    )
    return out


def pressure_residual(fan: TwoShockFan, data: RiemannData, gas: GasModel) -> float:
    return pressure_function(fan.p_M, data, gas)
