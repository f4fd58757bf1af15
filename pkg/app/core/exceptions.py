"""
Exception hierarchy shared by every layer.

Each error carries the process exit code the CLI should return for it:
1 for user / configuration problems, 2 for internal failures.
"""

from app.utils.enum import ExitCode


class OrbitAudioError(Exception):
    exit_code: ExitCode = ExitCode.INTERNAL_ERROR

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InternalError(OrbitAudioError):
    exit_code = ExitCode.INTERNAL_ERROR


class UserInputError(OrbitAudioError):
    exit_code = ExitCode.USER_ERROR


class AudioLoadError(UserInputError):
    def __init__(self, path, cause: str):
        super().__init__(f"cannot load audio '{path}': {cause}")
        self.path = path
        self.cause = cause


class FramingError(UserInputError):
    pass


class DatasetError(UserInputError):
    pass


class TransformError(UserInputError):
    pass


class EmptyInputError(UserInputError):
    pass


class DimensionMismatchError(UserInputError):
    def __init__(self, expected: int, actual: int, what: str = "vector"):
        super().__init__(f"{what} dimension mismatch: expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class DegenerateTemplateError(UserInputError):
    def __init__(self, parameter: float | None, norm: float):
        where = "template" if parameter is None else f"orbit member for parameter {parameter}"
        super().__init__(f"degenerate {where}: norm {norm:.3e}")
        self.parameter = parameter
        self.norm = norm


class ConfigHashMismatchError(UserInputError):
    def __init__(self, what: str, expected: str, actual: str):
        super().__init__(f"{what} config hash mismatch: expected {expected[:12]}, found {actual[:12]}")
        self.expected = expected
        self.actual = actual


class BankCorruptionError(UserInputError):
    pass


class FeatureCacheError(UserInputError):
    pass
