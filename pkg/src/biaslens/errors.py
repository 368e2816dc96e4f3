"""Exception hierarchy shared by all modules.

Every error carries a stable machine-readable ``code`` so the HTTP layer
and the CLI can map failures without string matching.
"""

from __future__ import annotations


class BiaslensError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details


class LoadError(BiaslensError):
    """A word-vector file could not be parsed."""

    code = "load_error"

    def __init__(self, message: str, line: int | None = None, **details):
        super().__init__(message, line=line, **details)
        self.line = line


class IngestError(BiaslensError):
    """A corpus file could not be ingested."""

    code = "ingest_error"

    def __init__(self, message: str, record: int | None = None, **details):
        super().__init__(message, record=record, **details)
        self.record = record


class OovError(BiaslensError):
    """A required token is absent from the vocabulary."""

    code = "oov"

    def __init__(self, tokens, message: str | None = None):
        tokens = tuple(tokens)
        if message is None:
            message = "out of vocabulary: " + ", ".join(tokens)
        super().__init__(message, tokens=tokens)
        self.tokens = tokens


class ValidationError(BiaslensError):
    """Invalid value for a domain type (bad word list, bad config...)."""

    code = "invalid_value"


class EmptyListError(ValidationError):
    code = "empty_list"


class ListOverlapError(ValidationError):
    code = "list_overlap"


class PairLengthError(ValidationError):
    code = "pair_length_mismatch"


class EmbeddingMismatchError(ValidationError):
    code = "embedding_mismatch"


class TemplateError(ValidationError):
    """A fill-in-the-blank template is malformed."""

    code = "template_invalid"


class NothingToRankError(ValidationError):
    """Every completion candidate was excluded."""

    code = "nothing_to_rank"


class ArtifactNotFoundError(BiaslensError):
    """A referenced embedding/corpus/model id is not registered."""

    code = "artifact_not_found"


class JobConflictError(BiaslensError):
    """A training job is already running for the same artifact id."""

    code = "job_conflict"
