"""Exception types shared across the package."""


class SenseScdError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(SenseScdError):
    """A file does not conform to its declared format."""


class ValidationError(SenseScdError):
    """Inputs violate a structural constraint (duplicates, empty lists, ...)."""


class UnresolvableLemmaError(SenseScdError):
    """The lemma has no sense with an available embedding."""


class NoOccurrencesError(SenseScdError):
    """The lemma never occurs in the corpus being aggregated."""


class UndefinedMetricError(SenseScdError):
    """A metric is undefined for the given inputs (e.g. zero rank variance)."""
