"""Closed-form 1-fan subsolutions parameterised by the middle density.

With the middle density ``rho1`` chosen, the six jump equalities determine
``mu0, mu1, beta, p1, eps1, eps2`` where

    eps1 = C/2 - gamma - beta**2,    eps2 = C - beta**2 - eps1,

so the subsolution conditions become ``eps1 > 0`` and ``eps2 > 0``.  The
construction is only guaranteed for a large enough velocity jump
``u = v_- - v_+``; :func:`threshold_u` estimates how large.

Three regimes are distinguished by ``R = rho_- - rho_+`` (negative, positive,
zero).  Which velocity stays fixed while ``u`` grows depends on the regime:
``v_-`` for ``rho_- < rho_+`` (or equal densities with ``p_- > p_+``), ``v_+``
otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import SearchConfig
from .errors import (
    BudgetExhausted,
    DegenerateBeta,
    ExcludedCase,
    FanError,
    Infeasible,
    InfeasibleRho1,
    NonpositiveDiscriminant,
    SingularY,
)
from .fan_algebra import DEFAULT_TOL, MiddleRegion, SubsolutionCandidate, VerificationReport, verify
from .gas import GasModel, RiemannData

R_ZERO_RTOL = 1e-12
BETA_TOL = 1e-12
Y_TOL = 1e-12
DEFAULT_RHO1_FACTOR = 1.25

CASE_RNEG, CASE_RPOS, CASE_RZERO = "Rneg", "Rpos", "Rzero"


@dataclass(frozen=True)
class OneFanInvariants:
    R: float
    A_mom: float
    H: float
    u: float
    B_disc: float


def invariants(data: RiemannData) -> OneFanInvariants:
    l, r = data.left, data.right
    R = l.rho - r.rho
    A = l.rho * l.v2 - r.rho * r.v2
    H = l.rho * l.v2**2 - r.rho * r.v2**2 + l.p - r.p
    return OneFanInvariants(R, A, H, l.v2 - r.v2, A * A - R * H)


def density_case(data: RiemannData) -> str:
    rm, rp = data.left.rho, data.right.rho
    if abs(rm - rp) <= R_ZERO_RTOL * (rm + rp):
        return CASE_RZERO
    return CASE_RNEG if rm < rp else CASE_RPOS


def fixed_side(data: RiemannData) -> str:
    """``"left"`` if ``v_-`` is held fixed as ``u`` grows, ``"right"`` if ``v_+`` is."""
    case = density_case(data)
    if case == CASE_RNEG:
        return "left"
    if case == CASE_RPOS:
        return "right"
    if data.left.p == data.right.p:
        raise ExcludedCase("equal densities and equal pressures are not covered")
    return "left" if data.left.p > data.right.p else "right"


def mu_pair(inv: OneFanInvariants, data: RiemannData, rho1: float) -> tuple[float, float]:
    """Outer interface speeds ``(mu0, mu1)`` (the branch with ``mu0 < mu1``)."""
    rm, rp = data.left.rho, data.right.rho
    case = density_case(data)
    if case == CASE_RZERO:
        if not (rho1 > rp and inv.u > 0):
            raise InfeasibleRho1("equal densities need rho1 > rho_+ and u > 0", rho1=rho1, u=inv.u)
        l, r = data.left, data.right
        a = rp * inv.u / (rho1 - rp)
        b = (l.p - r.p) / (rp * inv.u)
        s = l.v2 + r.v2
        return 0.5 * (-a + b + s), 0.5 * (a + b + s)

    lower = rp if case == CASE_RNEG else rm
    if not rho1 > lower:
        raise InfeasibleRho1("rho1 must exceed the larger outer density", rho1=rho1, bound=lower)
    if not inv.B_disc > 0:
        raise NonpositiveDiscriminant("B must be positive", B=inv.B_disc)

    R, A, H, B = inv.R, inv.A_mom, inv.H, inv.B_disc
    dm, dp = rho1 - rm, rho1 - rp
    # sqrt(B q) with the quotient taken after the square root
    root0 = math.sqrt(B * dp * dm) / dm
    root1 = math.sqrt(B * dm * dp) / dp
    if A > 0:
        # (A - sqrt(B q)) / R rationalised: A^2 - B q is divisible by R
        mu0 = (H * dp / dm - A * A / dm) / (A + root0)
        mu1 = (H * dm / dp + A * A / dp) / (A + root1)
    else:
        mu0 = (A - root0) / R
        mu1 = (A - root1) / R
    return mu0, mu1


def mu_pair_closed_form(inv: OneFanInvariants, data: RiemannData, rho1: float) -> tuple[float, float]:
    """``A/R -/+ sqrt(...)/R`` written out literally (R != 0 only)."""
    rm, rp = data.left.rho, data.right.rho
    R, A, B = inv.R, inv.A_mom, inv.B_disc
    mu0 = A / R - math.sqrt(B * (rho1 - rp) / (rho1 - rm)) / R
    mu1 = A / R - math.sqrt(B * (rho1 - rm) / (rho1 - rp)) / R
    return mu0, mu1


@dataclass(frozen=True)
class OneFanState:
    rho1: float
    mu0: float
    mu1: float
    beta: float
    beta_alt: float  # beta from the right mass balance, a cross-check
    X: float
    Y: float
    Z: float
    p1: float
    eps1: float
    eps2: float
    case_tag: str

    @property
    def C(self) -> float:
        return self.beta**2 + self.eps1 + self.eps2

    @property
    def gamma(self) -> float:
        return 0.5 * self.C - self.beta**2 - self.eps1

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["C"] = self.C
        d["gamma"] = self.gamma
        return d


def middle_state(inv: OneFanInvariants, data: RiemannData, gas: GasModel, rho1: float) -> OneFanState:
    cv = gas.c_v
    l, r = data.left, data.right
    rm, rp, vm, vp, pm, pp = l.rho, r.rho, l.v2, r.v2, l.p, r.p
    case = density_case(data)
    mu0, mu1 = mu_pair(inv, data, rho1)

    beta = rm / rho1 * vm + mu0 * (rho1 - rm) / rho1
    beta_alt = rp / rho1 * vp + mu1 * (rho1 - rp) / rho1
    gap = BETA_TOL * (1 + abs(inv.u))
    if abs(vm - beta) < gap or abs(beta - vp) < gap:
        raise DegenerateBeta("beta coincides with an outer velocity", beta=beta, v_minus=vm, v_plus=vp)

    qm = (beta + vm) / (beta - vm)
    qp = (vp + beta) / (vp - beta)
    Z = pp + rp * vp**2 - rho1 * beta**2 + mu1**2 * (rho1 - rp)
    y_gap = Y_TOL * rho1 * max(rm, rp)

    if case == CASE_RZERO:
        X = rp * (pp - pm) * ((2 * cv + 1) * rho1 - rp)
        Y = rp * (rho1 - rp) * ((vm + beta) / (vm - beta) + (beta + vp) / (beta - vp))
        if abs(Y) < y_gap:
            raise SingularY("Y vanishes", Y=Y)
        eps1 = X / (rho1 * Y)
        p1 = Z - X / Y
    else:
        R = inv.R
        X = rp * rm * (pm - pp) + (2 * cv + 1) * rho1 * (rm * pp - rp * pm)
        Y = qm * rp * (rm - rho1) - qp * rm * (rho1 - rp)
        if abs(Y) < y_gap or abs(Y + rho1 * R) < y_gap:
            raise SingularY("Y or Y + rho1 R vanishes", Y=Y, Y_shift=Y + rho1 * R)
        p1 = (Y * Z - X) / (Y + rho1 * R)
        eps1 = (rho1 * R * Z + X) / (rho1 * (Y + rho1 * R))

    eps2 = ((rho1 - rp) * (p1 + pp) + 2 * cv * (rho1 * pp - rp * p1)) / (rho1 * rp) + (
        qp * (rho1 - rp) / rp - 1
    ) * eps1
    return OneFanState(rho1, mu0, mu1, beta, beta_alt, X, Y, Z, p1, eps1, eps2, case)


def ad12_slack(state: OneFanState, data: RiemannData, gas: GasModel) -> float:
    """``p1^c_v - rho1^(c_v+1) max(p_-^c_v / rho_-^(c_v+1), p_+^c_v / rho_+^(c_v+1))``."""
    cv = gas.c_v
    l, r = data.left, data.right
    bound = state.rho1 ** (cv + 1) * max(l.p**cv / l.rho ** (cv + 1), r.p**cv / r.rho ** (cv + 1))
    head = state.p1**cv if state.p1 > 0 else 0.0
    return head - bound


@dataclass
class Feasibility:
    feasible: bool
    margins: dict = field(default_factory=dict)
    state: OneFanState | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "margins": dict(self.margins),
            "reason": self.reason,
            "state": None if self.state is None else self.state.to_dict(),
        }


def _y_margins(state: OneFanState, data: RiemannData, inv: OneFanInvariants) -> dict:
    if state.case_tag == CASE_RNEG:
        return {"y_sign": -state.Y, "y_sign_shifted": -(state.Y + state.rho1 * inv.R)}
    if state.case_tag == CASE_RPOS:
        return {"y_sign": state.Y, "y_sign_shifted": state.Y + state.rho1 * inv.R}
    sign = math.copysign(1.0, data.right.p - data.left.p) if data.right.p != data.left.p else 0.0
    return {"y_sign": sign * state.Y}


def feasible(inv: OneFanInvariants, data: RiemannData, gas: GasModel, rho1: float) -> Feasibility:
    """Evaluate every margin of the 1-fan construction; infeasibility is a result."""
    try:
        st = middle_state(inv, data, gas, rho1)
    except FanError as exc:
        return Feasibility(False, {}, None, exc.code)
    m = {
        "order": st.mu1 - st.mu0,
        "left_speed": data.left.v2 - st.mu0,
        "right_speed": st.mu1 - data.right.v2,
        "p1": st.p1,
        "eps1": st.eps1,
        "eps2": st.eps2,
        "ad12": ad12_slack(st, data, gas),
    }
    m.update(_y_margins(st, data, inv))
    bad = [k for k, v in m.items() if not v > 0]
    return Feasibility(not bad, m, st, None if not bad else "nonpositive: " + ",".join(bad))


def min_rho1(gas: GasModel, data: RiemannData) -> float:
    """Sufficient lower bound on the middle density for ``eps2 > 0`` at large ``u``."""
    cv = gas.c_v
    rm, rp = data.left.rho, data.right.rho
    case = density_case(data)
    if case == CASE_RZERO:
        fixed_side(data)  # raises ExcludedCase for equal pressures
        return (2 * cv + 1) * rp
    if case == CASE_RNEG:
        return ((2 * cv + 1) * rm + rp) / 2 + math.sqrt(rp**2 + (4 * cv**2 - 1) * rp * rm) / 2
    return (rm + (2 * cv + 1) * rp) / 2 + math.sqrt(rm**2 + (4 * cv**2 - 1) * rp * rm) / 2


def with_jump(template: RiemannData, u: float, side: str) -> RiemannData:
    """Template data with velocity jump ``u``, keeping the ``side`` velocity fixed."""
    l, r = template.left, template.right
    if side == "left":
        return RiemannData.from_values(l.rho, l.v2, l.p, r.rho, l.v2 - u, r.p)
    return RiemannData.from_values(l.rho, r.v2 + u, l.p, r.rho, r.v2, r.p)


def _feasible_at(template, gas, rho1, u, side) -> Feasibility:
    d = with_jump(template, u, side)
    return feasible(invariants(d), d, gas, rho1)


def _certified(template, gas, rho1, u, side, confirm: int) -> bool:
    if not _feasible_at(template, gas, rho1, u, side).feasible:
        return False
    return all(_feasible_at(template, gas, rho1, u * 2.0**i, side).feasible for i in range(1, confirm + 1))


@dataclass
class ThresholdResult:
    u_bar: float
    rho1: float
    fixed_side: str
    fixed_velocity: float
    U: float  # v_+ < U (fixed left) or v_- > U (fixed right) is covered
    margins_at_u_bar: dict

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def threshold_u(template: RiemannData, gas: GasModel, rho1: float, cfg: SearchConfig | None = None) -> ThresholdResult:
    """Numerically certified velocity jump above which the 1-fan construction works.

    A point ``u`` is certified when the construction is feasible at ``u`` and
    at ``u * 2**i`` for ``i = 1..cfg.confirm_count``.  The first certified
    point of the geometric grid ``u_start * u_growth**i`` is refined by
    bisection against the previous grid point.  The result is an upper
    estimate of the true threshold, not the infimum.
    """
    cfg = cfg or SearchConfig()
    side = fixed_side(template)
    V = template.left.v2 if side == "left" else template.right.v2

    prev, u = 0.0, cfg.u_start
    while u <= cfg.u_cap:
        if _certified(template, gas, rho1, u, side, cfg.confirm_count):
            break
        prev, u = u, u * cfg.u_growth
    else:
        raise BudgetExhausted("no certified velocity jump below u_cap", u_cap=cfg.u_cap, rho1=rho1)

    lo, hi = prev, u
    for _ in range(cfg.bisect_steps):
        mid = 0.5 * (lo + hi)
        if _certified(template, gas, rho1, mid, side, cfg.confirm_count):
            hi = mid
        else:
            lo = mid
    rec = _feasible_at(template, gas, rho1, hi, side)
    U = V - hi if side == "left" else V + hi
    return ThresholdResult(hi, rho1, side, V, U, rec.margins)


def threshold_scan(template: RiemannData, gas: GasModel, factors, cfg: SearchConfig | None = None):
    """``threshold_u`` over ``rho1 = factor * min_rho1``; yields result or error rows."""
    base = min_rho1(gas, template)
    for f in factors:
        rho1 = float(f) * base
        try:
            yield rho1, threshold_u(template, gas, rho1, cfg)
        except BudgetExhausted:
            yield rho1, None


def build_candidate(data: RiemannData, gas: GasModel, rho1: float) -> tuple[SubsolutionCandidate, OneFanState]:
    if density_case(data) == CASE_RZERO and data.left.p == data.right.p:
        raise ExcludedCase("equal densities and equal pressures are not covered")
    inv = invariants(data)
    rec = feasible(inv, data, gas, rho1)
    if not rec.feasible:
        raise Infeasible("1-fan construction infeasible", rho1=rho1, reason=rec.reason, margins=rec.margins)
    st = rec.state
    region = MiddleRegion(rho1, 0.0, st.beta, st.gamma, 0.0, st.C, st.p1)
    return SubsolutionCandidate(1, (st.mu0, st.mu1), (region,)), st


@dataclass
class OneFanResult:
    state: OneFanState
    candidate: SubsolutionCandidate
    report: VerificationReport
    rho1: float


def search(data: RiemannData, gas: GasModel, rho1: float | None = None, tol: float = DEFAULT_TOL) -> OneFanResult:
    """Build and verify a 1-fan candidate; ``rho1`` defaults to 1.25 * ``min_rho1``."""
    if rho1 is None:
        rho1 = DEFAULT_RHO1_FACTOR * min_rho1(gas, data)
    cand, st = build_candidate(data, gas, rho1)
    return OneFanResult(st, cand, verify(cand, data, gas, tol), rho1)


def default_factors(n: int = 12, top: float = 4.0) -> np.ndarray:
    return np.geomspace(1.05, top, n)
