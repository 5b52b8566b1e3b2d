"""Exception taxonomy shared by every module.

ConfigError maps to CLI exit code 1, DataError to 2; anything else is an
internal error (3).
"""


class SPRError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(SPRError):
    """Bad or missing configuration: rule files, dictionaries, parameters."""


class DataError(SPRError):
    """Bad input data: corpora, matrices, labels."""


class EmptyDocumentError(DataError):
    """Document text is empty or whitespace-only after normalization."""


class DegenerateDocumentError(DataError):
    """Document survives segmentation but has no countable terms."""
