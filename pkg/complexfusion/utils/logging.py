import os
import logging
from logging.handlers import RotatingFileHandler

from rich.console import Console
from rich.logging import RichHandler

EVENTS_LEVEL_NUM = 38
DEFAULT_LOG_BACKUP_COUNT = 10
TRACE_LEVEL_NUM = 5

logger = logging.getLogger("complexfusion")


def setup_logging(debug: bool = False, trace: bool = False) -> logging.Logger:
    """
    Route the package logger to standard error through rich. Standard output
    stays reserved for report documents.
    """
    logging.addLevelName(TRACE_LEVEL_NUM, "TRACE")
    level = TRACE_LEVEL_NUM if trace else logging.DEBUG if debug else logging.INFO
    logger.setLevel(level)

    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=True,
        )
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
    logger.propagate = False
    return logger


def setup_events_logger(full_path, events_retention_size):
    logging.addLevelName(EVENTS_LEVEL_NUM, "EVENT")

    events_logger = logging.getLogger("complexfusion.event")
    events_logger.setLevel(EVENTS_LEVEL_NUM)

    def event(self, message, *args, **kws):
        if self.isEnabledFor(EVENTS_LEVEL_NUM):
            self._log(EVENTS_LEVEL_NUM, message, args, **kws)

    logging.Logger.event = event

    formatter = logging.Formatter(
        "%(asctime)s | %(levelname)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    os.makedirs(full_path, exist_ok=True)
    events_path = os.path.join(full_path, "events.log")
    # One handler per events file.
    for existing in list(events_logger.handlers):
        if getattr(existing, "baseFilename", None) == os.path.abspath(events_path):
            return events_logger

    file_handler = RotatingFileHandler(
        events_path,
        maxBytes=int(events_retention_size),
        backupCount=DEFAULT_LOG_BACKUP_COUNT,
    )
    file_handler.setFormatter(formatter)
    file_handler.setLevel(EVENTS_LEVEL_NUM)
    events_logger.addHandler(file_handler)
    events_logger.propagate = False

    return events_logger
