from loguru import logger
import sys
from pathlib import Path

from induction_confidence.utils.config import Settings, get_settings

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def setup_logging(level: str | None = None, log_dir: str | None = None, settings: Settings | None = None):
    """
    Configure loguru logger for the CLI and the library.

    Console output goes to stderr so stdout stays reserved for reports.
    File sinks are only added when a log directory is configured.
    """
    settings = settings or get_settings()
    level = (level or settings.log_level).upper()
    log_dir = log_dir or settings.log_dir

    # Remove default handler
    logger.remove()

    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=level,
        colorize=True,
    )

    if log_dir:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)

        # Add file handler for all logs
        logger.add(
            log_path / "app.log",
            rotation="10 MB",  # Rotate when file reaches 10MB
            retention="1 month",  # Keep logs for 1 month
            compression="zip",  # Compress rotated logs
            format=LOG_FORMAT,
            level="DEBUG",
            backtrace=True,
            diagnose=True,
        )

        # Add file handler for errors only
        logger.add(
            log_path / "error.log",
            rotation="10 MB",
            retention="1 month",
            compression="zip",
            format=LOG_FORMAT,
            level="ERROR",
            backtrace=True,
            diagnose=True,
        )

    return logger


# Initialize logger
logger = setup_logging()
