"""Exception hierarchy shared across the pipeline.

Exit-code mapping for the CLI lives in :mod:`qapipe.cli`; the FastAPI
layer maps the same classes to HTTP status codes.
"""


class QapipeError(Exception):
    """Base class for all pipeline errors."""


class ConfigError(QapipeError):
    """Invalid or incomplete pipeline configuration."""


class InputError(QapipeError):
    """Caller-supplied input is unusable (empty question, bad value)."""


class EmptyQuestion(InputError):
    """Raised when an operation needs at least one question token."""


class DataFileError(QapipeError):
    """A resource file (stop list, lexicon, corpus, model, dataset) is malformed."""


class ModelFormatError(DataFileError):
    """Persisted classifier model has an unknown version or bad structure."""


class IndexFormatError(DataFileError):
    """Persisted retrieval index has an unknown version or bad structure."""


class BackendFailure(QapipeError):
    """A tagger backend rejected its input."""


class EmptyTrainingSet(DataFileError):
    """Classifier training requires at least one labelled example."""


class IllegalLabel(DataFileError):
    """A training row carries a class label outside the taxonomy."""


class NoFocus(QapipeError):
    """The question contains no noun phrase to serve as a focus."""


class UnsupportedFineClass(InputError):
    """Numeric extraction was asked for a fine class it does not know."""


class MissingGoldClass(DataFileError):
    """Accuracy scoring needs a gold class on every question."""


class BadPattern(DataFileError):
    """An answer pattern failed to compile as a regular expression."""


class EmptyList(InputError):
    """An aggregate (such as a rank list) must be non-empty."""


class DuplicateDocId(DataFileError):
    """Two corpus documents share an id."""


class EmptyCorpus(DataFileError):
    """Index construction needs at least one document."""
