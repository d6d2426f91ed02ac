"""Exception types shared across the toolkit."""


class MTQualError(Exception):
    """Base class for all toolkit errors."""


class IngestionError(MTQualError):
    """Raised when an input file cannot be decoded or parsed."""


class AlignmentError(MTQualError):
    """Raised when aligned files disagree on segment counts."""


class ScoringError(MTQualError):
    """Raised when a metric is asked to score degenerate input."""


class UndefinedPrecisionError(ScoringError):
    """Raised when a precision has no denominator (empty candidate)."""


class CorrelationError(MTQualError):
    """Raised when a correlation is undefined (zero variance, too few points)."""
