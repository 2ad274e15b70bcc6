import logging
import os
import sys

LOGGER_NAME = "VaalerCertLogger"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL
}


def setup_logger():
    """
    Builds the process-wide logger. The level comes from LOG_LEVEL (default INFO).
    Records go to stderr: stdout is reserved for JSON, CSV and text reports.
    """
    # Mesh export chatter is never useful on the command line
    logging.getLogger("trimesh").setLevel(logging.ERROR)

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(LEVELS.get(os.getenv("LOG_LEVEL", "INFO").upper(), logging.INFO))

    if logger.hasHandlers():
        logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.propagate = False
    return logger


def set_level(name: str):
    """Overrides the environment level, e.g. from a --log-level flag."""
    level = LEVELS.get(name.upper())
    if level is None:
        raise ValueError(f"Unknown log level '{name}'. Must be one of {', '.join(LEVELS)}.")
    log.setLevel(level)


log = setup_logger()
