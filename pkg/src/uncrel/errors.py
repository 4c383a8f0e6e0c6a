"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit-specific errors."""


class DimensionMismatchError(ToolkitError, ValueError):
    """Operands have incompatible dimensions."""


class FinitenessError(ToolkitError, ValueError):
    """NaN or Inf encountered where finite values are required."""


class HermiticityError(ToolkitError, ValueError):
    """Matrix is not Hermitian within tolerance."""


class NormalizationError(ToolkitError, ValueError):
    """State vector is not unit-norm within tolerance."""


class EigensolverError(ToolkitError, RuntimeError):
    """Eigensolver failed to converge or produced an invalid basis."""


class NumericalIntegrityError(ToolkitError, ArithmeticError):
    """A redundant internal cross-check diverged, signalling corrupted input."""


class ProblemFileError(ToolkitError, ValueError):
    """Problem file failed validation; the message names the offending entry."""


class UnknownRelationError(ToolkitError, ValueError):
    """Relation identifier not present in the registry."""
