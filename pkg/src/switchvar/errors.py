"""Exception hierarchy shared across the library.

Everything raised on purpose derives from :class:`SwitchvarError` so callers
(and the pipeline driver) can distinguish library failures from bugs.
"""

from __future__ import annotations


class SwitchvarError(Exception):
    """Base class for all library errors."""


class SchemaError(SwitchvarError):
    """Input file is missing a required column or header."""


class RowParseError(SwitchvarError):
    """A data row could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SeriesValidationError(SwitchvarError):
    """A series violates its invariants (duplicate months, bad values, ...)."""


class AlignmentError(SwitchvarError):
    """Two series share no common months."""


class FetchError(SwitchvarError):
    """Remote download failed; carries the HTTP status when one was received."""

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class InsufficientDataError(SwitchvarError):
    """Too few observations for the requested computation."""


class DegenerateInputError(SwitchvarError):
    """Input is degenerate (zero variance, undefined moment ratios, ...)."""


class RankDeficiencyError(SwitchvarError):
    """A regressor cross-product (or product-moment) matrix is singular."""


class ComparisonError(SwitchvarError):
    """Two models were compared on incompatible samples or shapes."""


class DensityError(SwitchvarError):
    """A regime covariance matrix is not positive definite."""


class FilterError(SwitchvarError):
    """Forward filtering broke down; carries the offending period index."""

    def __init__(self, message: str, period: int):
        super().__init__(f"period {period}: {message}")
        self.period = period


class SmootherError(SwitchvarError):
    """Backward smoothing hit a zero predicted probability."""


class RegimeCollapseError(SwitchvarError):
    """A regime's effective weight fell to (near) zero during EM."""


class NonConvergenceError(SwitchvarError):
    """No EM restart converged; carries the best (model, diagnostics) pair."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class ErgodicityError(SwitchvarError):
    """Transition matrix is reducible or periodic; no ergodic distribution."""


class InfiniteDurationError(SwitchvarError):
    """A regime is absorbing (diagonal probability equal to one)."""


class ConfigError(SwitchvarError):
    """Pipeline configuration is missing, malformed, or inconsistent."""


class OutputError(SwitchvarError):
    """An output file or directory could not be written."""


class PipelineStageError(SwitchvarError):
    """A pipeline stage failed; wraps the cause and names the stage."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
