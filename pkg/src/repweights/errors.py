"""Exception types shared across the package."""


class RepweightsError(Exception):
    """Base class for all package-specific failures."""


class DataError(RepweightsError):
    """A dataset lookup failed (missing table, unit, or year)."""


class ExtractSchemaError(DataError):
    """Extract header does not match the required column list."""

    def __init__(self, message: str, column_index: int | None = None):
        super().__init__(message)
        self.column_index = column_index


class ExtractRowError(DataError):
    """A data row failed to parse; carries its 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(message)
        self.line_number = line_number


class HarmonizationError(RepweightsError):
    """Category merge could not be applied to a table."""


class ApportionmentError(RepweightsError):
    """Seat or vote allocation could not be constructed."""


class MetricsError(RepweightsError):
    """Metric computation failed (missing unit, zero denominator)."""


class ScenarioError(RepweightsError):
    """Scenario is invalid or unbuildable against the loaded data."""


class TransportError(RepweightsError):
    """Network-level fetch failure; safe to retry."""

    retryable = True


class FetchError(RepweightsError):
    """Remote returned a non-success HTTP status."""

    def __init__(self, status: int, body_excerpt: str = ""):
        super().__init__(f"fetch failed with HTTP {status}: {body_excerpt[:200]}")
        self.status = status
        self.body_excerpt = body_excerpt[:200]
