import logging
import sys

import colorlog

LOG_FORMAT = "%(log_color)s%(asctime)s - [%(levelname)s] - %(name)s - %(message)s"

QUIET_LOGGERS = ("sympy", "hypothesis", "pyparsing")


def setup_logging(level: str = "WARNING") -> logging.Logger:
    """Install one colored stderr handler on the skewpbw logger tree."""
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))

    logger = logging.getLogger("skewpbw")
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False

    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
    return logger
