"""Domain errors. Each carries a stable machine-readable ``code``."""


class FanError(Exception):
    code = "fan_error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"error": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class NotTwoShock(FanError):
    code = "not_two_shock"


class NoBracket(FanError):
    code = "no_bracket"


class DegenerateData(FanError):
    code = "degenerate_data"


class HeatCapacityTooSmall(FanError):
    code = "heat_capacity_too_small"


class SearchExhausted(FanError):
    code = "search_exhausted"


class InfeasibleRho1(FanError):
    code = "infeasible_rho1"


class NonpositiveDiscriminant(FanError):
    code = "nonpositive_discriminant"


class DegenerateBeta(FanError):
    code = "degenerate_beta"


class SingularY(FanError):
    code = "singular_y"


class ExcludedCase(FanError):
    code = "excluded_case"


class BudgetExhausted(FanError):
    code = "budget_exhausted"


class Infeasible(FanError):
    code = "infeasible"
