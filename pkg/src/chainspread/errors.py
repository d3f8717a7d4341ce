"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI:
  2 -> ParseError, SpecError
  3 -> GraphValidationError
  4 -> NumericalError subclasses
"""


class ChainspreadError(Exception):
    """Base class for all package errors."""


class CompanyNotFoundError(ChainspreadError, KeyError):
    def __init__(self, company_id):
        super().__init__(company_id)
        self.company_id = company_id

    def __str__(self):
        return f"unknown company id: {self.company_id!r}"


class GraphBuildError(ChainspreadError):
    """Raised when graph construction is attempted on invalid records."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"{len(self.violations)} validation violation(s): {lines}{more}")


class GraphValidationError(GraphBuildError):
    pass


class ParseError(ChainspreadError):
    """Structural error in an input file; carries a 1-based row number when known."""

    def __init__(self, message, row=None, path=None):
        self.row = row
        self.path = path
        prefix = ""
        if path is not None:
            prefix += f"{path}: "
        if row is not None:
            prefix += f"row {row}: "
        super().__init__(prefix + message)


class SpecError(ChainspreadError):
    """Invalid model specification (unknown variable, bad option, ...)."""


class NumericalError(ChainspreadError):
    """Base for failures of the numerical machinery."""


class DomainError(NumericalError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class UndefinedMetricError(NumericalError):
    """Metric has no value for this input (e.g. HHI with no quantified shares)."""


class UnusableVariableError(NumericalError):
    """A design column cannot be realized (e.g. all values missing)."""


class EmptyDesignError(NumericalError):
    """No usable rows survive filtering."""


class SingularDesignError(NumericalError):
    def __init__(self, columns):
        self.columns = list(columns)
        super().__init__(f"design matrix is rank deficient; dependent columns: {self.columns}")


class InsufficientDataError(NumericalError):
    """Fewer observations than parameters."""


class GenerationError(ChainspreadError):
    """Infeasible synthetic-data configuration."""
