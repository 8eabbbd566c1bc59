"""Fan subsolution candidates and exact evaluation of their algebraic conditions.

A candidate with ``n`` middle regions is an admissible fan subsolution iff

* the interface speeds are strictly increasing,
* the mass / momentum (two components) / energy jump conditions hold on
  every interface,
* ``C/2 I - v (x) v + U`` is positive definite in every middle region, and
* the entropy jump inequality holds on every interface.

This module only evaluates those conditions; it never constructs candidates.

The relaxed energy flux ``(rho C / 2 + (c_v + 1) p) v`` is not Galilean
covariant, so a candidate is a subsolution in one particular frame.  A
candidate carrying ``frame_shift = w`` is expressed in lab coordinates but is
checked in the frame moving with x2-velocity ``w``, where it was built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .gas import GasModel, PrimitiveState, RiemannData, entropy_density_rp

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class MiddleRegion:
    """Constant relaxed state of one fan sector.

    ``(alpha, beta)`` is the mean velocity, ``[[gamma, delta], [delta, -gamma]]``
    the traceless Reynolds-type tensor and ``C`` the kinetic energy bound.
    """

    rho: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    C: float
    p: float

    def __post_init__(self):
        if not (self.rho > 0 and self.p > 0):
            raise ValueError("middle region needs rho > 0 and p > 0")
        for name in ("alpha", "beta", "gamma", "delta", "C"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def boosted(self, w: float) -> MiddleRegion:
        """Relaxed state seen with x2-velocity shifted by ``w``."""
        b, a = self.beta, self.alpha
        return replace(
            self,
            beta=b + w,
            C=self.C + 2 * b * w + w * w,
            gamma=self.gamma - b * w - 0.5 * w * w,
            delta=self.delta + a * w,
        )

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
            "C": self.C,
            "p": self.p,
        }

    @classmethod
    def from_dict(cls, d: dict) -> MiddleRegion:
        return cls(**{k: float(d[k]) for k in ("rho", "alpha", "beta", "gamma", "delta", "C", "p")})


@dataclass(frozen=True)
class SubsolutionCandidate:
    n: int
    mu: tuple[float, ...]
    regions: tuple[MiddleRegion, ...]
    frame_shift: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(float(m) for m in self.mu))
        object.__setattr__(self, "regions", tuple(self.regions))
        if self.n not in (1, 2):
            raise ValueError("fan order must be 1 or 2")
        if len(self.mu) != self.n + 1 or len(self.regions) != self.n:
            raise ValueError("need n + 1 speeds and n regions")

    def boosted(self, w: float) -> SubsolutionCandidate:
        """The same subsolution written in a frame where velocities are larger by ``w``."""
        return SubsolutionCandidate(
            self.n,
            tuple(m + w for m in self.mu),
            tuple(r.boosted(w) for r in self.regions),
            self.frame_shift + w,
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mu": list(self.mu),
            "regions": [r.to_dict() for r in self.regions],
            "frame_shift": self.frame_shift,
        }

    @classmethod
    def from_dict(cls, d: dict) -> SubsolutionCandidate:
        return cls(
            n=int(d["n"]),
            mu=tuple(float(m) for m in d["mu"]),
            regions=tuple(MiddleRegion.from_dict(r) for r in d["regions"]),
            frame_shift=float(d.get("frame_shift", 0.0)),
        )


def comoving(cand: SubsolutionCandidate, data: RiemannData) -> tuple[SubsolutionCandidate, RiemannData]:
    """Candidate and data in the frame where the candidate was built."""
    w = cand.frame_shift
    if w == 0.0:
        return cand, data
    return cand.boosted(-w), data.boosted(-w)


def _outer_as_region(s: PrimitiveState) -> MiddleRegion:
    # v (x) v - |v|^2/2 I with v = (v1, v2)
    return MiddleRegion(
        rho=s.rho,
        alpha=s.v1,
        beta=s.v2,
        gamma=0.5 * (s.v1**2 - s.v2**2),
        delta=s.v1 * s.v2,
        C=s.v1**2 + s.v2**2,
        p=s.p,
    )


def _interface_terms(mu: float, a: MiddleRegion, b: MiddleRegion, cv: float):
    """Terms of ``mu [q(a) - q(b)] = [f(a) - f(b)]`` for the four balance laws.

    ``a`` lies on the left of the interface, ``b`` on the right.
    """

    def energy(r):
        return 0.5 * r.rho * r.C + cv * r.p

    def energy_flux_coef(r):
        return 0.5 * r.rho * r.C + (cv + 1) * r.p

    return {
        "1": (
            [mu * a.rho, -mu * b.rho],
            [a.rho * a.beta, -b.rho * b.beta],
        ),
        "2": (
            [mu * a.rho * a.alpha, -mu * b.rho * b.alpha],
            [a.rho * a.delta, -b.rho * b.delta],
        ),
        "3": (
            [mu * a.rho * a.beta, -mu * b.rho * b.beta],
            [a.rho * (0.5 * a.C - a.gamma), -b.rho * (0.5 * b.C - b.gamma), a.p, -b.p],
        ),
        "4": (
            [mu * energy(a), -mu * energy(b)],
            [energy_flux_coef(a) * a.beta, -energy_flux_coef(b) * b.beta],
        ),
    }


def _interfaces(cand: SubsolutionCandidate, data: RiemannData):
    left = _outer_as_region(data.left)
    right = _outer_as_region(data.right)
    regs = cand.regions
    yield "l", cand.mu[0], left, regs[0]
    yield "r", cand.mu[-1], regs[-1], right
    if cand.n == 2:
        yield "m", cand.mu[1], regs[0], regs[1]


def _rh_table(cand, data, gas):
    cand, data = comoving(cand, data)
    table = {}
    for tag, mu, a, b in _interfaces(cand, data):
        for k, (lhs, rhs) in _interface_terms(mu, a, b, gas.c_v).items():
            table[f"rh{tag}{k}"] = (lhs, rhs)
    return table


def rh_residuals(cand: SubsolutionCandidate, data: RiemannData, gas: GasModel) -> dict[str, float]:
    """LHS - RHS of every jump equality, keyed ``rhl1 .. rhr4`` (and ``rhm*`` for n = 2)."""
    return {k: sum(lhs) - sum(rhs) for k, (lhs, rhs) in _rh_table(cand, data, gas).items()}


def rh_relative_residuals(cand, data, gas) -> dict[str, float]:
    out = {}
    for k, (lhs, rhs) in _rh_table(cand, data, gas).items():
        scale = 1.0 + max(abs(t) for t in (*lhs, *rhs))
        out[k] = (sum(lhs) - sum(rhs)) / scale
    return out


def subsolution_matrix(region: MiddleRegion) -> np.ndarray:
    """``C/2 I - v (x) v + U``; must be positive definite."""
    a, b = region.alpha, region.beta
    h = 0.5 * region.C
    return np.array(
        [
            [h - a * a + region.gamma, region.delta - a * b],
            [region.delta - a * b, h - b * b - region.gamma],
        ]
    )


def subsolution_margins(cand: SubsolutionCandidate) -> dict[str, float]:
    """Trace and determinant of the subsolution matrix, per region."""
    out = {}
    for i, r in enumerate(cand.regions, start=1):
        a, b = r.alpha, r.beta
        out[f"sc1_{i}"] = r.C - a * a - b * b
        out[f"sc2_{i}"] = (0.5 * r.C - a * a + r.gamma) * (0.5 * r.C - b * b - r.gamma) - (
            r.delta - a * b
        ) ** 2
    return out


def admissibility_margins(cand: SubsolutionCandidate, data: RiemannData, gas: GasModel) -> dict[str, float]:
    """Entropy production on each interface (RHS - LHS, must be >= 0).

    ``mu (L_a - L_b) <= L_a v_a - L_b v_b`` is evaluated in the rearranged
    form ``L_a (v_a - mu) - L_b (v_b - mu)``, which is exactly zero across a
    contact where ``v = mu`` on both sides.
    """
    cand, data = comoving(cand, data)
    cv = gas.c_v
    out = {}
    names = {"l": "adml", "r": "admr", "m": "admm"}
    for tag, mu, a, b in _interfaces(cand, data):
        la = entropy_density_rp(a.rho, a.p, cv)
        lb = entropy_density_rp(b.rho, b.p, cv)
        # entropy inequality reads mu (L_b - L_a) <= L_b v_b - L_a v_a
        out[names[tag]] = lb * (b.beta - mu) - la * (a.beta - mu)
    return out


def order_gaps(cand: SubsolutionCandidate) -> dict[str, float]:
    return {f"order_{i}": cand.mu[i + 1] - cand.mu[i] for i in range(cand.n)}


@dataclass
class VerificationReport:
    equality_residuals: dict[str, float]
    relative_residuals: dict[str, float]
    inequality_margins: dict[str, float]
    strict: dict[str, bool]
    passed: bool
    admissibility_strict: bool
    tolerance_used: float
    frame_shift: float = 0.0
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "admissibility_strict": self.admissibility_strict,
            "tolerance_used": self.tolerance_used,
            "frame_shift": self.frame_shift,
            "failures": list(self.failures),
            "equality_residuals": dict(self.equality_residuals),
            "relative_residuals": dict(self.relative_residuals),
            "inequality_margins": dict(self.inequality_margins),
            "strict": dict(self.strict),
        }


def verify(
    cand: SubsolutionCandidate,
    data: RiemannData,
    gas: GasModel,
    tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Check every condition; failure is reported, never raised.

    Equalities pass when the relative residual is at most ``tol``.  Speed
    ordering and subsolution conditions must hold strictly (margin > 0, no
    band).  Entropy inequalities are non-strict; ``admissibility_strict``
    records whether they also hold strictly.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    raw = rh_residuals(cand, data, gas)
    rel = rh_relative_residuals(cand, data, gas)
    strict_margins = {**order_gaps(cand), **subsolution_margins(cand)}
    adm = admissibility_margins(cand, data, gas)
    margins = {**strict_margins, **adm}

    failures = [k for k, r in rel.items() if not abs(r) <= tol]
    failures += [k for k, m in strict_margins.items() if not m > 0]
    failures += [k for k, m in adm.items() if not m >= 0]
    return VerificationReport(
        equality_residuals=raw,
        relative_residuals=rel,
        inequality_margins=margins,
        strict={k: m > 0 for k, m in margins.items()},
        passed=not failures,
        admissibility_strict=all(m > 0 for m in adm.values()),
        tolerance_used=tol,
        frame_shift=cand.frame_shift,
        failures=failures,
    )


def candidate_from_fan(fan, data: RiemannData) -> SubsolutionCandidate:
    """The 1D two-shock solution written as a (degenerate) 2-fan candidate."""
    vm = fan.v_M
    regs = tuple(
        MiddleRegion(rho=rho, alpha=0.0, beta=vm, gamma=-0.5 * vm * vm, delta=0.0, C=vm * vm, p=fan.p_M)
        for rho in (fan.rho_Mminus, fan.rho_Mplus)
    )
    return SubsolutionCandidate(2, (fan.sigma_minus, vm, fan.sigma_plus), regs)
