import logging
import sys
from pathlib import Path
from virtual_knot_lab.config.settings import get_settings

settings = get_settings()

FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logger(name: str) -> logging.Logger:
    """
    Configures and returns a logger with a stderr handler and, when enabled,
    a file handler under LOG_DIR.

    stdout carries command results only, so nothing here writes to it.
    """
    logger = logging.getLogger(name)
    logger.setLevel(settings.LOG_LEVEL)

    if getattr(logger, "_vkl_configured", False):
        return logger

    formatter = logging.Formatter(FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if settings.LOG_TO_FILE:
        log_dir = Path(settings.LOG_DIR)
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_dir / "vkl.log")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    logger._vkl_configured = True  # type: ignore[attr-defined]
    return logger
