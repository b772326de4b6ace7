"""Exception hierarchy shared across the package.

Every error carries a stable machine-readable ``kind`` used by the CLI run
report and by the exit-code contract.
"""


class AdoForgeError(Exception):
    """Base class; ``kind`` is a stable snake_case identifier."""

    kind = "error"


class ParseError(AdoForgeError):
    kind = "parse_error"


class DimensionMismatch(AdoForgeError):
    kind = "dimension_mismatch"


class KernelNotContained(AdoForgeError):
    kind = "kernel_not_contained"


class NotNilpotent(AdoForgeError):
    kind = "not_nilpotent"


class NotAnIdeal(AdoForgeError):
    kind = "not_an_ideal"


class ZeroIdeal(AdoForgeError):
    kind = "zero_ideal"


class BudgetExceeded(AdoForgeError):
    kind = "budget_exceeded"


class AlgebraMismatch(AdoForgeError):
    kind = "algebra_mismatch"


class NotCentral(AdoForgeError):
    kind = "not_central"


class InvalidGrading(AdoForgeError):
    kind = "invalid_grading"


class DegenerateCocycle(AdoForgeError):
    kind = "degenerate_cocycle"


class NotACocycle(AdoForgeError):
    kind = "not_a_cocycle"


class TensorBudgetExceeded(BudgetExceeded):
    kind = "tensor_budget_exceeded"


class NotLinearlyIndependent(AdoForgeError):
    kind = "not_linearly_independent"


class SeparatorFailed(AdoForgeError):
    kind = "separator_failed"


class UnknownExample(AdoForgeError):
    kind = "unknown_example"
