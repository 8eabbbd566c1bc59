from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SearchConfig:
    """Budgets and tolerances shared by the 2-fan grid search and the u-threshold scan."""

    max_j: int = 50  # delta = p_M * 2**-j, j = 1..max_j
    max_k: int = 60  # eps = eps_max * 2**-k, k = 0..max_k
    margin_floor: float = 1e-12
    u_cap: float = 1e12
    confirm_count: int = 8
    tol: float = 1e-9
    # u-threshold grid: u_start * u_growth**i, then bisection on the last gap
    u_start: float = 2.0**-4
    u_growth: float = 2.0
    bisect_steps: int = 30

    def __post_init__(self):
        for name in ("max_j", "max_k", "confirm_count"):
            v = getattr(self, name)
            if not (isinstance(v, int) and v > 0):
                raise ValueError(f"{name} must be a positive integer")
        if self.max_j > 200 or self.max_k > 200:
            raise ValueError("max_j and max_k are capped at 200")
        for name in ("margin_floor", "u_cap", "tol", "u_start"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.u_growth > 1:
            raise ValueError("u_growth must exceed 1")
        if self.bisect_steps < 0:
            raise ValueError("bisect_steps must be non-negative")
