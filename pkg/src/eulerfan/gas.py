"""Ideal-gas closures and the primitive-state value types."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class GasModel:
    """Ideal gas ``e = c_v p / rho``; ``c_v`` is the dimensionless heat capacity."""

    c_v: float

    def __post_init__(self):
        if not (self.c_v > 0 and math.isfinite(self.c_v)):
            raise ValueError(f"c_v must be positive and finite, got {self.c_v!r}")

    @property
    def gamma(self) -> float:
        """Adiabatic exponent, 1 + 1/c_v."""
        return 1.0 + 1.0 / self.c_v


@dataclass(frozen=True)
class PrimitiveState:
    rho: float
    v1: float
    v2: float
    p: float

    def __post_init__(self):
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise ValueError(f"density must be positive, got {self.rho!r}")
        if not (self.p > 0 and math.isfinite(self.p)):
            raise ValueError(f"pressure must be positive, got {self.p!r}")
        if not (math.isfinite(self.v1) and math.isfinite(self.v2)):
            raise ValueError("velocity components must be finite")

    @property
    def temperature(self) -> float:
        return self.p / self.rho

    def boosted(self, w: float) -> PrimitiveState:
        """Same state seen with x2-velocity shifted by ``w``."""
        return replace(self, v2=self.v2 + w)

    def to_dict(self) -> dict:
        return {"rho": self.rho, "v1": self.v1, "v2": self.v2, "p": self.p}

    @classmethod
    def from_dict(cls, d: dict) -> PrimitiveState:
        return cls(
            rho=float(d["rho"]),
            v1=float(d.get("v1", 0.0)),
            v2=float(d["v2"]),
            p=float(d["p"]),
        )


@dataclass(frozen=True)
class RiemannData:
    """Planar jump at x2 = 0: ``left`` for x2 < 0, ``right`` for x2 > 0.

    Both states must have zero x1-velocity.
    """

    left: PrimitiveState
    right: PrimitiveState

    def __post_init__(self):
        if self.left.v1 != 0.0 or self.right.v1 != 0.0:
            raise ValueError("Riemann data must have v1 = 0 on both sides")

    @classmethod
    def from_values(cls, rho_m, v_m, p_m, rho_p, v_p, p_p) -> RiemannData:
        return cls(
            PrimitiveState(rho_m, 0.0, v_m, p_m),
            PrimitiveState(rho_p, 0.0, v_p, p_p),
        )

    def boosted(self, w: float) -> RiemannData:
        return RiemannData(self.left.boosted(w), self.right.boosted(w))

    def mirrored(self) -> RiemannData:
        """Reflection x2 -> -x2: sides swap and v2 changes sign."""
        l, r = self.left, self.right
        return RiemannData(
            PrimitiveState(r.rho, 0.0, -r.v2, r.p),
            PrimitiveState(l.rho, 0.0, -l.v2, l.p),
        )

    def to_dict(self) -> dict:
        return {"left": self.left.to_dict(), "right": self.right.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> RiemannData:
        return cls(PrimitiveState.from_dict(d["left"]), PrimitiveState.from_dict(d["right"]))


def internal_energy(state: PrimitiveState, gas: GasModel) -> float:
    return gas.c_v * state.p / state.rho


def entropy_rp(rho: float, p: float, c_v: float) -> float:
    """``log(p**c_v / rho**(c_v + 1))`` evaluated in log form."""
    return c_v * math.log(p) - (c_v + 1.0) * math.log(rho)


def entropy(state: PrimitiveState, gas: GasModel) -> float:
    return entropy_rp(state.rho, state.p, gas.c_v)


def entropy_density_rp(rho: float, p: float, c_v: float) -> float:
    return rho * entropy_rp(rho, p, c_v)


def entropy_density(state: PrimitiveState, gas: GasModel) -> float:
    """rho * s(rho, p), the entropy per unit volume."""
    return state.rho * entropy(state, gas)
