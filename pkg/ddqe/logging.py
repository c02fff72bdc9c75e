"""Package logging for ddqe.

Modules log through children of the ``ddqe`` logger. The first ``get_logger`` call
attaches a single stream handler to ``ddqe`` and sets its level from
``DDQE_LOG_LEVEL`` (default ``INFO``, case-insensitive). An unrecognized level falls
back to ``INFO`` with a warning. Context belongs in ``extra={...}``.
"""

import logging
import os

ROOT_NAME = "ddqe"
LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
DEFAULT_LEVEL = "INFO"

_CONFIGURED = False


def log_level() -> tuple[int, str | None]:
    """Level from ``DDQE_LOG_LEVEL`` and the rejected value, if any."""
    raw = os.getenv("DDQE_LOG_LEVEL", DEFAULT_LEVEL).strip().upper() or DEFAULT_LEVEL
    level = logging.getLevelName(raw)
    if isinstance(level, int):
        return level, None
    return logging.getLevelName(DEFAULT_LEVEL), raw


def get_logger(name: str = ROOT_NAME) -> logging.Logger:
    global _CONFIGURED
    if not _CONFIGURED:
        root = logging.getLogger(ROOT_NAME)
        if not root.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter(LOG_FORMAT))
            root.addHandler(handler)
        level, rejected = log_level()
        root.setLevel(level)
        _CONFIGURED = True
        if rejected is not None:
            root.warning("unknown log level, using INFO", extra={"DDQE_LOG_LEVEL": rejected})
    return logging.getLogger(name)
