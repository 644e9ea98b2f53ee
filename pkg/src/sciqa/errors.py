"""Exception types shared across the package."""


class SciqaError(Exception):
    """Base class for all package-specific errors."""


class CsvParseError(SciqaError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(message if row is None else f"row {row}: {message}")


class DuplicateKeyError(SciqaError):
    def __init__(self, keys):
        self.keys = sorted(keys)
        super().__init__(f"duplicate keys: {', '.join(self.keys)}")


class EmptyDocumentError(SciqaError):
    pass


class DocumentNotFoundError(SciqaError, KeyError):
    pass


class EmptyCorpusError(SciqaError):
    pass


class NotFittedError(SciqaError):
    pass


class EmptyInputError(SciqaError):
    pass


class RemoteUnavailableError(SciqaError):
    pass


class ProtocolViolationError(SciqaError):
    def __init__(self, message: str, answer_index: int | None = None):
        self.answer_index = answer_index
        if answer_index is not None:
            message = f"answer {answer_index}: {message}"
        super().__init__(message)


class PipelineCycleError(SciqaError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"cycle detected: {' -> '.join(self.cycle)}")


class DanglingNodeError(SciqaError):
    def __init__(self, names, reason: str):
        self.names = sorted(names)
        super().__init__(f"{reason}: {', '.join(self.names)}")


class EmptyIndexError(SciqaError):
    pass


class PipelineStageError(SciqaError):
    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")


class DatasetParseError(SciqaError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{message} (at {path})" if path else message)


class DatasetFieldError(SciqaError):
    def __init__(self, field: str, where: str):
        self.field = field
        self.where = where
        super().__init__(f"missing or invalid field '{field}' at {where}")


class DatasetTooSmallError(SciqaError):
    pass


class InvalidDatasetError(SciqaError):
    pass


class AmbiguousContextError(SciqaError):
    def __init__(self, example_ids):
        self.example_ids = list(example_ids)
        super().__init__(
            "context matches zero or multiple documents for examples: "
            + ", ".join(self.example_ids)
        )


class UndefinedMetricError(SciqaError):
    """Raised when a metric has no defined value (e.g. empty relevant set)."""


class AlignmentError(SciqaError):
    pass


class VersionMismatchError(SciqaError):
    def __init__(self, expected, found):
        self.expected = expected
        self.found = found
        super().__init__(f"index format_version mismatch: expected {expected}, found {found}")


class IntegrityError(SciqaError):
    pass
