"""Exception hierarchy shared across the toolkit."""


class CouplekitError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(CouplekitError):
    """Bad configuration file or rule set."""


class IngestError(CouplekitError):
    """Unrecoverable input problem (e.g. malformed header)."""


class SeriesError(CouplekitError):
    """Invalid series construction or alignment request."""


class UnknownCategoryError(SeriesError):
    """Requested category is not part of the active rule set."""


class DecompositionError(CouplekitError):
    """Series cannot be decomposed (too short, gaps, bad period)."""


class CorrelationError(CouplekitError):
    """Cross-correlation is undefined for the given inputs."""


class DegenerateSeriesError(CorrelationError):
    """Zero variance on the paired overlap."""


class InsufficientDataError(CorrelationError):
    """Too few jointly present observations."""


class SymbolicError(CouplekitError):
    """Invalid symbolic-transformation request."""


class SynthError(CouplekitError):
    """Invalid synthetic-data specification."""
