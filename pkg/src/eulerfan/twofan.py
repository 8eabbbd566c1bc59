"""Admissible 2-fan subsolutions as (eps, delta)-perturbations of the 1D solution.

Work happens in the frame where the 1D contact is at rest (``v_M = 0``).  The
middle densities are moved apart by ``eps`` (``rho_M- + eps`` and
``rho_M+ - eps``), the common middle pressure is lowered by ``delta``, the
three interface speeds and the ``C_i``, ``gamma_i`` then follow from the jump
conditions.  For ``c_v > 1/2`` small enough ``(eps, delta)`` make every strict
inequality hold; the search walks a geometric grid until it finds such a pair.

All coefficient functions accept numpy arrays for ``eps``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .config import SearchConfig
from .errors import DegenerateData, HeatCapacityTooSmall, NotTwoShock, SearchExhausted
from .fan_algebra import MiddleRegion, SubsolutionCandidate, VerificationReport, verify
from .gas import GasModel, RiemannData
from .riemann1d import TwoShockFan, is_two_shock, solve_two_shock_fan

EPS_SCAN_SAMPLES = 512
EPS_SHRINK = 0.999
EPS_FLOOR = 1e-14
A_ZERO_RTOL = 1e-12


def shift_to_rest_frame(data: RiemannData, fan: TwoShockFan) -> tuple[RiemannData, float]:
    """Data seen from the frame moving with the contact, and the shift ``w = v_M``."""
    w = fan.v_M
    return data.boosted(-w), w


def rest_frame_fan(fan: TwoShockFan) -> TwoShockFan:
    w = fan.v_M
    return replace(
        fan,
        v_M=0.0,
        contact_speed=0.0,
        sigma_minus=fan.sigma_minus - w,
        sigma_plus=fan.sigma_plus - w,
    )


def _unpack(fan: TwoShockFan, data: RiemannData, eps):
    l, r = data.left, data.right
    r1 = fan.rho_Mminus + eps
    r2 = fan.rho_Mplus - eps
    return l.rho, r.rho, l.v2, r.v2, l.p, r.p, r1, r2


def eval_abd(fan: TwoShockFan, data: RiemannData, eps):
    rm, rp, vm, vp, pm, pp, r1, r2 = _unpack(fan, data, eps)
    A = rm * r1 * (r2 - rp) - rp * r2 * (r1 - rm)
    B = rm * rp * r1 * r2 * (vm - vp) ** 2 - (pm - pp) * A
    D = vm * rm * r1 * (r2 - rp) - vp * rp * r2 * (r1 - rm)
    return A, B, D


def eval_e(fan: TwoShockFan, data: RiemannData, eps):
    """Constant term of the quadratic in the middle speed; ``D^2 - A E = S``."""
    rm, rp, vm, vp, pm, pp, r1, r2 = _unpack(fan, data, eps)
    return (pm - pp) * (r1 - rm) * (r2 - rp) + vm**2 * rm * r1 * (r2 - rp) - vp**2 * rp * r2 * (r1 - rm)


def a_quadratic(fan: TwoShockFan, data: RiemannData) -> tuple[float, float, float]:
    """Coefficients ``(a2, a1, a0)`` of ``A(eps) = a2 eps^2 + a1 eps + a0``."""
    rm, rp = data.left.rho, data.right.rho
    a2 = rp - rm
    a1 = -(2 * rm * rp + (rm - rp) * (fan.rho_Mminus - fan.rho_Mplus))
    a0 = float(eval_abd(fan, data, 0.0)[0])
    return a2, a1, a0


def mu_speeds_closed_form(fan: TwoShockFan, data: RiemannData, eps):
    """Interface speeds exactly as the three displayed quotients by ``A(eps)``.

    Loses accuracy as ``eps -> 0`` whenever ``A(0) = 0`` (0/0 form); used as a
    cross-check of :func:`mu_speeds`.
    """
    rm, rp, vm, vp, pm, pp, r1, r2 = _unpack(fan, data, eps)
    A, B, D = eval_abd(fan, data, eps)
    u = vm - vp
    mu0 = (D + rm * rp * r2 * u - np.sqrt(r1**2 * (r2 - rp) / (r1 - rm) * B)) / A
    mu1 = (D - np.sqrt((r1 - rm) * (r2 - rp) * B)) / A
    mu2 = (D + rm * rp * r1 * u - np.sqrt(r2**2 * (r1 - rm) / (r2 - rp) * B)) / A
    return mu0, mu1, mu2


def mu_speeds(fan: TwoShockFan, data: RiemannData, eps):
    """Interface speeds ``(mu0, mu1, mu2)``.

    The middle speed is the smaller root of ``A x^2 - 2 D x + E = 0``.  When
    ``D > 0`` it is evaluated as ``E / (D + sqrt(S))`` with
    ``S = (rho_1 - rho_-)(rho_2 - rho_+) B``, free of the cancellation in
    ``(D - sqrt(S)) / A``.  The outer speeds then follow from mass
    conservation across each outer interface.
    """
    rm, rp, vm, vp, pm, pp, r1, r2 = _unpack(fan, data, eps)
    A, B, D = eval_abd(fan, data, eps)
    E = eval_e(fan, data, eps)
    root = np.sqrt((r1 - rm) * (r2 - rp) * B)
    with np.errstate(divide="ignore", invalid="ignore"):
        mu1 = np.where(D > 0, E / (D + root), (D - root) / A)
    mu1 = mu1[()] if np.ndim(mu1) == 0 else mu1
    mu0 = vm + r1 / (r1 - rm) * (mu1 - vm)
    mu2 = vp + r2 / (r2 - rp) * (mu1 - vp)
    return mu0, mu1, mu2


def c_gamma(fan: TwoShockFan, data: RiemannData, gas: GasModel, eps, delta, mus=None):
    """``(C1, C2, gamma1, gamma2)`` from the outer energy and momentum balances."""
    cv = gas.c_v
    rm, rp, vm, vp, pm, pp, r1, r2 = _unpack(fan, data, eps)
    mu0, mu1, mu2 = mu_speeds(fan, data, eps) if mus is None else mus
    p_mid = fan.p_M - delta
    C1 = (
        2.0
        / (r1 * (mu0 - mu1))
        * (
            -mu0 * (cv * (p_mid - pm) - 0.5 * rm * vm**2)
            + mu1 * (cv + 1) * p_mid
            - (0.5 * rm * vm**2 + (cv + 1) * pm) * vm
        )
    )
    C2 = (
        2.0
        / (r2 * (mu2 - mu1))
        * (
            -mu2 * (cv * (p_mid - pp) - 0.5 * rp * vp**2)
            + mu1 * (cv + 1) * p_mid
            - (0.5 * rp * vp**2 + (cv + 1) * pp) * vp
        )
    )
    g1 = (r1 * C1 / 2 - rm * vm**2 + p_mid - pm - mu0 * (r1 * mu1 - rm * vm)) / r1
    g2 = (r2 * C2 / 2 - rp * vp**2 + p_mid - pp - mu2 * (r2 * mu1 - rp * vp)) / r2
    return C1, C2, g1, g2


MARGIN_NAMES = ("order_0", "order_1", "sc1", "sc2", "sc3", "sc4", "adml", "admr")


def feasibility_margins(fan: TwoShockFan, data: RiemannData, gas: GasModel, eps, delta) -> dict:
    """Margins of the eight strict conditions on ``(eps, delta)``.

    All must be positive for the assembled candidate to be an admissible
    2-fan subsolution.
    """
    cv = gas.c_v
    rm, rp, vm, vp, pm, pp, r1, r2 = _unpack(fan, data, eps)
    mus = mu_speeds(fan, data, eps)
    mu0, mu1, mu2 = mus
    C1, C2, g1, g2 = c_gamma(fan, data, gas, eps, delta, mus=mus)
    p_mid = fan.p_M - delta

    def L(rho, p):
        return rho * (cv * np.log(p) - (cv + 1) * np.log(rho))

    L1, L2, Lm, Lp = L(r1, p_mid), L(r2, p_mid), L(rm, pm), L(rp, pp)
    s = mu1 * mu1
    return {
        "order_0": mu1 - mu0,
        "order_1": mu2 - mu1,
        "sc1": C1 - s,
        "sc2": C2 - s,
        "sc3": (C1 / 2 + g1) * (C1 / 2 - s - g1),
        "sc4": (C2 / 2 + g2) * (C2 / 2 - s - g2),
        "adml": L1 * (mu1 - mu0) - Lm * (vm - mu0),
        "admr": Lp * (vp - mu2) - L2 * (mu1 - mu2),
    }


def _first_failure(values: np.ndarray, grid: np.ndarray, f) -> float | None:
    """Locate the first sign loss of ``f`` along ``grid`` and refine by bisection."""
    bad = np.nonzero(~(values > 0))[0]
    if bad.size == 0:
        return None
    i = bad[0]
    lo = 0.0 if i == 0 else float(grid[i - 1])
    hi = float(grid[i])
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo


def eps_max(fan: TwoShockFan, data: RiemannData) -> float:
    """Largest admissible density perturbation.

    On ``(0, eps_max]``: ``B > 0``, ``rho_M+ - eps > rho_+``, ``A != 0`` and
    the three speeds are strictly ordered.
    """
    e2 = fan.rho_Mplus - data.right.rho

    a2, a1, a0 = a_quadratic(fan, data)
    scale = data.left.rho * fan.rho_Mminus * abs(fan.rho_Mplus - data.right.rho) + data.right.rho * fan.rho_Mplus * abs(
        fan.rho_Mminus - data.left.rho
    )
    if abs(a0) <= A_ZERO_RTOL * scale:
        roots = [-a1 / a2] if a2 != 0 else []
    else:
        roots = [float(x.real) for x in np.roots([a2, a1, a0]) if abs(x.imag) <= 1e-14 * (1 + abs(x.real))]
    pos = [x for x in roots if x > 0]
    e3 = min(pos) if pos else np.inf

    cap = min(e2, e3)
    grid = cap * np.arange(1, EPS_SCAN_SAMPLES + 1) / (EPS_SCAN_SAMPLES + 1)

    def b_of(e):
        with np.errstate(all="ignore"):
            return float(eval_abd(fan, data, np.float64(e))[1])

    e1 = _first_failure(eval_abd(fan, data, grid)[1], grid, b_of)
    cap_b = cap if e1 is None else e1

    def order_of(e):
        # numpy scalars: the density bound gives inf/nan (a failure), not an exception
        with np.errstate(all="ignore"):
            m0, m1, m2 = mu_speeds(fan, data, np.float64(e))
        return float(np.fmin(m1 - m0, m2 - m1)) if np.isfinite(m0 + m1 + m2) else -np.inf

    # ordering on its own grid over (0, cap_b] so it is resolved near the B cap
    grid_b = cap_b * np.arange(1, EPS_SCAN_SAMPLES + 1) / EPS_SCAN_SAMPLES
    with np.errstate(all="ignore"):
        m0, m1, m2 = mu_speeds(fan, data, grid_b)
        gaps = np.minimum(m1 - m0, m2 - m1)
    e_ord = _first_failure(gaps, grid_b, order_of)

    out = EPS_SHRINK * min(cap_b, cap if e_ord is None else e_ord)
    if not out > EPS_FLOOR:
        raise DegenerateData("no positive eps_max", eps_max=out)
    return out


@dataclass(frozen=True)
class TwoFanCoefficients:
    eps: float
    delta: float
    A_eps: float
    B_eps: float
    D_eps: float
    mu0: float
    mu1: float
    mu2: float
    C1: float
    C2: float
    gamma1: float
    gamma2: float
    eps_max: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def coefficients(fan, data, gas, eps: float, delta: float, e_max: float) -> TwoFanCoefficients:
    A, B, D = (float(x) for x in eval_abd(fan, data, eps))
    mus = mu_speeds(fan, data, eps)
    C1, C2, g1, g2 = (float(x) for x in c_gamma(fan, data, gas, eps, delta, mus=mus))
    return TwoFanCoefficients(eps, delta, A, B, D, *(float(m) for m in mus), C1, C2, g1, g2, e_max)


def assemble(fan: TwoShockFan, co: TwoFanCoefficients) -> SubsolutionCandidate:
    """Rest-frame candidate from the coefficients."""
    p_mid = fan.p_M - co.delta
    r1 = MiddleRegion(fan.rho_Mminus + co.eps, 0.0, co.mu1, co.gamma1, 0.0, co.C1, p_mid)
    r2 = MiddleRegion(fan.rho_Mplus - co.eps, 0.0, co.mu1, co.gamma2, 0.0, co.C2, p_mid)
    return SubsolutionCandidate(2, (co.mu0, co.mu1, co.mu2), (r1, r2))


@dataclass
class TwoFanResult:
    candidate: SubsolutionCandidate  # lab coordinates, frame_shift = v_M
    rest_candidate: SubsolutionCandidate
    coefficients: TwoFanCoefficients
    report: VerificationReport
    fan: TwoShockFan
    margins: dict
    j: int
    k: int

    @property
    def eps(self) -> float:
        return self.coefficients.eps

    @property
    def delta(self) -> float:
        return self.coefficients.delta

    @property
    def eps_max(self) -> float:
        return self.coefficients.eps_max


def _prepare(data: RiemannData, gas: GasModel):
    if not gas.c_v > 0.5:
        raise HeatCapacityTooSmall("2-fan construction needs c_v > 1/2", c_v=gas.c_v)
    if not is_two_shock(data, gas):
        raise NotTwoShock("data do not produce two shocks")
    fan = solve_two_shock_fan(data, gas)
    rest_data, w = shift_to_rest_frame(data, fan)
    return fan, rest_frame_fan(fan), rest_data, w


def grid_margins(rest_fan, rest_data, gas, e_max: float, j: int, max_k: int):
    delta = rest_fan.p_M * 2.0**-j
    ks = np.arange(max_k + 1)
    eps = e_max * 2.0**-ks
    with np.errstate(all="ignore"):
        m = feasibility_margins(rest_fan, rest_data, gas, eps, delta)
    return delta, eps, m


def search(data: RiemannData, gas: GasModel, cfg: SearchConfig | None = None) -> TwoFanResult:
    """First feasible ``(j, k)`` in lexicographic order, assembled and verified.

    ``delta = p_M 2**-j`` (``j = 1..max_j``), ``eps = eps_max 2**-k``
    (``k = 0..max_k``); feasible means every margin exceeds
    ``cfg.margin_floor``.
    """
    cfg = cfg or SearchConfig()
    fan, rfan, rdata, w = _prepare(data, gas)
    e_max = eps_max(rfan, rdata)

    best = (-np.inf, None)
    for j in range(1, cfg.max_j + 1):
        delta, eps, m = grid_margins(rfan, rdata, gas, e_max, j, cfg.max_k)
        worst = np.min(np.vstack([np.nan_to_num(m[n], nan=-np.inf) for n in MARGIN_NAMES]), axis=0)
        ok = np.nonzero(worst > cfg.margin_floor)[0]
        i_best = int(np.argmax(worst))
        if worst[i_best] > best[0]:
            best = (float(worst[i_best]), (j, i_best))
        if ok.size:
            k = int(ok[0])
            co = coefficients(rfan, rdata, gas, float(eps[k]), delta, e_max)
            rest = assemble(rfan, co)
            cand = rest.boosted(w)
            margins = {n: float(m[n][k]) for n in MARGIN_NAMES}
            return TwoFanResult(cand, rest, co, verify(cand, data, gas, cfg.tol), fan, margins, j, k)

    j, k = best[1]
    delta, eps, m = grid_margins(rfan, rdata, gas, e_max, j, cfg.max_k)
    raise SearchExhausted(
        "no feasible (eps, delta) within the grid budget",
        best_j=j,
        best_k=k,
        best_min_margin=best[0],
        best_margins={n: float(m[n][k]) for n in MARGIN_NAMES},
    )


def scan_rows(data: RiemannData, gas: GasModel, cfg: SearchConfig | None = None):
    """Every grid point with its margins, for external plotting."""
    cfg = cfg or SearchConfig()
    fan, rfan, rdata, w = _prepare(data, gas)
    e_max = eps_max(rfan, rdata)
    for j in range(1, cfg.max_j + 1):
        delta, eps, m = grid_margins(rfan, rdata, gas, e_max, j, cfg.max_k)
        for k in range(cfg.max_k + 1):
            row = {"j": j, "k": k, "eps": float(eps[k]), "delta": delta}
            row.update({n: float(m[n][k]) for n in MARGIN_NAMES})
            row["feasible"] = all(row[n] > cfg.margin_floor for n in MARGIN_NAMES)
            yield row
