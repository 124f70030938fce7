"""Application logging to a rotating file."""

import logging
import traceback
from logging.handlers import RotatingFileHandler

_logger: logging.Logger | None = None


def setup_logger() -> logging.Logger:
    """Create and configure the application logger."""
    global _logger
    if _logger is not None:
        return _logger

    from ngbound.config import NGBOUND_DIR

    _logger = logging.getLogger("ngbound")
    _logger.setLevel(logging.DEBUG)

    log_path = NGBOUND_DIR / "ngbound.log"
    try:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handler: logging.Handler = RotatingFileHandler(
            log_path,
            maxBytes=5 * 1024 * 1024,
            backupCount=3,
        )
    except OSError:
        # Read-only home: keep logging, just not to disk
        handler = logging.StreamHandler()
        handler.setLevel(logging.WARNING)
    handler.setFormatter(
        logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
    )
    _logger.addHandler(handler)
    return _logger


def log_error(message: str, exc: Exception | None = None) -> None:
    """Log an error, with the traceback when an exception is given."""
    logger = setup_logger()
    if exc:
        tb = traceback.format_exception(type(exc), exc, exc.__traceback__)
        logger.error(f"{message}\n{''.join(tb)}")
    else:
        logger.error(message)


def log_warning(message: str) -> None:
    setup_logger().warning(message)


def log_info(message: str) -> None:
    setup_logger().info(message)
