import pytest
from pydantic import BaseModel

from app.core.decorators import decorateAllFunctionInClass, log_and_raise_error, log_and_return_exit_code
from app.core.exceptions import DatasetError, InternalError
from app.utils.logger import cli_logger


class Strict(BaseModel):
    value: int


@log_and_return_exit_code(cli_logger)
def command(outcome):
    if isinstance(outcome, Exception):
        raise outcome
    if outcome == "validation":
        Strict(value="not a number")
    return outcome


@pytest.mark.parametrize(
    "outcome, code",
    [
        (None, 0),
        (1, 1),
        (DatasetError("no tracks"), 1),
        (InternalError("bug"), 2),
        ("validation", 1),
        (FileNotFoundError("config.json"), 1),
        (RuntimeError("boom"), 2),
    ],
)
def test_exit_codes(outcome, code):
    assert command(outcome) == code


def test_class_decorator_reraises_unchanged():
    @decorateAllFunctionInClass(log_and_raise_error(cli_logger))
    class Service:
        def fail(self):
            raise DatasetError("bad")

        @staticmethod
        def ok():
            return 3

    assert Service.ok() == 3
    with pytest.raises(DatasetError):
        Service().fail()
