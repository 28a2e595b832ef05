"""Exception hierarchy shared across the pipeline.

The CLI maps these onto exit codes: usage/configuration problems exit 1,
data problems exit 2, generation-backend problems exit 3.
"""


class DmrError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class ConfigError(DmrError):
    """Invalid configuration or arguments (exit 1)."""

    exit_code = 1


class DataError(DmrError):
    """Malformed, missing, or inconsistent data (exit 2)."""

    exit_code = 2


class EmptyInputError(DataError):
    """An operation received empty input where content is required."""


class EmbeddingError(DataError):
    """Embedding failed (dimension mismatch, missing vector, no tokens)."""


class MissingVectorError(EmbeddingError):
    """A vector store lookup failed; carries the offending id."""

    def __init__(self, record_id: str):
        super().__init__(f"no vector stored for id {record_id!r}")
        self.record_id = record_id


class DegenerateInputError(DataError):
    """Numerically degenerate input, e.g. an all-zero vector."""


class BackendError(DmrError):
    """Generation-backend failure (exit 3)."""

    exit_code = 3


class GenerationError(BackendError):
    """The backend failed after exhausting retries; carries the record id."""

    def __init__(self, message: str, record_id: str):
        super().__init__(f"{message} (record {record_id!r})")
        self.record_id = record_id


class ContentError(BackendError):
    """The backend answered but the content is unusable (e.g. empty)."""


class ParseError(BackendError):
    """The backend answered but the payload could not be parsed."""
