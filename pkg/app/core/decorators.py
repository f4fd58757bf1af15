from __future__ import annotations
import types, functools
from typing import TYPE_CHECKING

from pydantic import ValidationError

from app.core.exceptions import OrbitAudioError
from app.utils.enum import ExitCode


if TYPE_CHECKING:
    from app.utils.logger import Logger


def log_and_raise_error(log_func: Logger):
    """
    Decorator that logs and re-raises errors.
    Mainly used by the controller and dal layers so the exception travels unchanged to the command layer,
    which owns the exit code decision.
    """

    def argument_decorator(original_function):
        @functools.wraps(original_function)
        def decorated_function(*args, **kwargs):
            try:
                return original_function(*args, **kwargs)
            except OrbitAudioError as e:
                log_func.error(f"{original_function.__qualname__}() raised {type(e).__name__}: {e}")
                raise
            except Exception as e:
                log_func.error(f"{original_function.__qualname__}() raised Exception: {e!r}")
                raise

        return decorated_function

    return argument_decorator


def log_and_return_exit_code(log_func: Logger):
    """
    Decorator for CLI command handlers. Converts the outcome into a process exit code:
    0 success, 1 user/config error, 2 internal error.
    """

    def argument_decorator(original_function):
        @functools.wraps(original_function)
        def decorated_function(*args, **kwargs) -> int:
            try:
                result = original_function(*args, **kwargs)
                return int(result) if isinstance(result, int) else int(ExitCode.SUCCESS)

            except OrbitAudioError as e:
                log_func.error(f"{original_function.__qualname__}(): {e}")
                return int(e.exit_code)
            except ValidationError as e:
                for error in e.errors():
                    log_func.error(f"Config - {error['loc']}: {error['msg']}")
                return int(ExitCode.USER_ERROR)
            except (FileNotFoundError, NotADirectoryError) as e:
                log_func.error(f"{original_function.__qualname__}(): {e}")
                return int(ExitCode.USER_ERROR)
            except Exception as e:
                detail_error = (
                    f"{original_function.__qualname__}() with positional "
                    f"argument(s) {args}, and keyword argument(s) {kwargs}, raise Exception:{repr(e)}"
                )
                log_func.error(detail_error)
                return int(ExitCode.INTERNAL_ERROR)

        return decorated_function

    return argument_decorator


def decorateAllFunctionInClass(decorator):
    """
    Decorate all functions with the argument decorator by checking the reflection of iterable obj whether it is
    equal to types.FunctionType.

    Example Usage:

    @decorateAllFunctionInClass(log_and_raise_error(bank_logger))
    class YourClass:
        def __init__(self):
            pass

        def functionOne(self):
            print("Function One")

    """

    def decorate(_class):
        for k, v in _class.__dict__.items():
            # Skip methods like __init__, __new__, etc.
            if k.startswith("__") and k.endswith("__"):
                continue

            if isinstance(v, types.FunctionType):  # Regular function
                setattr(_class, k, decorator(v))

            elif isinstance(v, classmethod):  # Class method
                func = v.__func__
                setattr(_class, k, classmethod(decorator(func)))

            elif isinstance(v, staticmethod):  # Static method
                func = v.__func__
                setattr(_class, k, staticmethod(decorator(func)))

        return _class

    return decorate
