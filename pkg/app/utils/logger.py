import logging

from colorama import Fore, Style
from uvicorn.logging import ColourizedFormatter

from app.core.config import CONFIG


class Formatter(ColourizedFormatter):

    def __init__(self, fore: str):
        self.fore = fore
        super().__init__("%(levelprefix)s %(asctime)s - %(name)s - %(message)s", "%d %b %H:%M:%S")

    def format(self, record):
        record.msg = f"{self.fore}{record.getMessage()}{Style.RESET_ALL}"
        record.args = None
        return super().format(record)


class Logger(logging.Logger):

    def __init__(self, name: str, level: int | str = CONFIG.LOG_LEVEL, fore: str = Fore.WHITE) -> None:
        super().__init__(name, logging.getLevelName(level) if isinstance(level, str) else level)
        formatter = Formatter(fore)
        handler = logging.StreamHandler()
        handler.setFormatter(formatter)
        handler.setLevel(self.level)
        self.addHandler(handler)


io_logger = Logger("SignalIO", fore=Fore.CYAN)
dsp_logger = Logger("DSP", fore=Fore.BLUE)
bank_logger = Logger("TemplateBank", fore=Fore.MAGENTA)
pipeline_logger = Logger("Pipeline", fore=Fore.YELLOW)
eval_logger = Logger("Eval", fore=Fore.GREEN)
cli_logger = Logger("Cli", fore=Fore.LIGHTYELLOW_EX)
