"""Fan subsolutions of the 2D Riemann problem for the full compressible Euler system."""

from .config import SearchConfig
from .errors import FanError
from .fan_algebra import MiddleRegion, SubsolutionCandidate, VerificationReport, verify
from .gas import GasModel, PrimitiveState, RiemannData
from .riemann1d import TwoShockFan, solve_two_shock_fan

__all__ = [
    "FanError",
    "GasModel",
    "MiddleRegion",
    "PrimitiveState",
    "RiemannData",
    "SearchConfig",
    "SubsolutionCandidate",
    "TwoShockFan",
    "VerificationReport",
    "solve_two_shock_fan",
    "verify",
]

__version__ = "0.1.0"
