# Logging utilities for tcores
# This file configures loguru sinks for the CLI and exposes the shared logger.
# Library modules only call get_logger(); sinks are installed by configure_logging().

import sys

from loguru import logger

from tcores.utils.config import Settings

MAX_MESSAGE_LENGTH = 1000


# Function to truncate long log messages
def truncate(record):
    """
    Truncate long log messages to prevent excessive output.

    Polynomial coefficient lists and partition streams can be huge; anything
    past MAX_MESSAGE_LENGTH characters is cut.

    Args:
        record: Log record object containing the message

    Returns:
        bool: Always True to allow the record to pass through
    """
    message = record["message"]
    if len(message) > MAX_MESSAGE_LENGTH:
        record["message"] = message[:MAX_MESSAGE_LENGTH] + "… [truncated]"
    return True


# Function to add run context to log records
def add_context(record):
    """
    Make sure every record carries the CLI subcommand in its extra data.

    The CLI binds ``command`` with ``logger.contextualize``; library calls made
    outside the CLI get a dash.

    Args:
        record: Log record object to enhance with context

    Returns:
        bool: Always True to allow the record to pass through
    """
    record["extra"].setdefault("command", "-")
    return True


# Colored console format with the subcommand as context
CONSOLE_LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<magenta>{extra[command]}</magenta> | "
    "<cyan>{name}:{function}:{line}</cyan> | "
    "<level>->>>>> {message}</level>"
)

# File format without colors
FILE_LOG_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss} | "
    "{level: <8} | "
    "{extra[command]} | "
    "{name}:{function}:{line} | "
    "->>>>> {message}"
)


def _record_filter(record):
    return truncate(record) and add_context(record)


def configure_logging(settings: Settings) -> None:
    """
    Replace loguru's default sink with the tcores console (and optional file) sinks.

    Args:
        settings: Runtime settings providing log level and optional log file path
    """
    logger.remove()

    # Console sink goes to stderr so stdout stays machine-readable
    logger.add(
        sink=sys.stderr,
        format=CONSOLE_LOG_FORMAT,
        colorize=True,
        backtrace=False,
        diagnose=False,
        filter=_record_filter,
        level=settings.log_level,
        enqueue=False,
    )

    if settings.log_file:
        logger.add(
            sink=settings.log_file,
            format=FILE_LOG_FORMAT,
            colorize=False,
            backtrace=True,
            diagnose=False,
            filter=_record_filter,
            level="DEBUG",
            rotation="10 MB",
            retention="30 days",
            compression="zip",
            enqueue=False,
        )


# Expose logger
get_logger = lambda: logger
