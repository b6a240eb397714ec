import logging
import logging.handlers
import os
import sys
from typing import Dict

from oim_lab.constants import CLIENT_NAME
from oim_lab.datamodel.logging_schema import LoggingSchema

logger = logging.getLogger(__name__)

LOGGING_LEVEL_STARTUP = logging.DEBUG

# the handler installed by the last configure_logging call
_handlers: Dict[str, logging.Handler] = {}

_LEVELS_MAP = {
    "crit": "CRITICAL",
    "err": "ERROR",
    "warning": "WARNING",
    "info": "INFO",
    "debug": "DEBUG",
}


def get_log_format(config: LoggingSchema) -> str:
    """
    Based on an environment variable $OIM_SUPPRESS_LOG_PREFIX, returns the appropriate format string for logger.
    """

    if os.environ.get("OIM_SUPPRESS_LOG_PREFIX") == "true":
        # something else is already prefixing our output
        return "[%(levelname)s] %(name)s: %(message)s"

    stream = ""
    if config.target == "stderr":
        stream = " (stderr)"
    pid = os.getpid()
    return f"%(asctime)s {CLIENT_NAME}[{pid}]{stream}: [%(levelname)s] %(name)s: %(message)s"


def _set_log_level(config: LoggingSchema) -> None:
    target = _LEVELS_MAP[config.level]
    logger.debug("Changing logging level to '%s'", target)
    logging.getLogger().setLevel(target)


def _set_logging_handler(config: LoggingSchema) -> None:
    handler: logging.Handler
    if config.target == "stdout":
        handler = logging.StreamHandler(sys.stdout)
    elif config.target == "stderr":
        handler = logging.StreamHandler(sys.stderr)
    else:
        raise RuntimeError(f"Unexpected value '{config.target}' for log target in the config")
    handler.setFormatter(logging.Formatter(get_log_format(config)))

    root = logging.getLogger()
    for old in list(root.handlers):
        if isinstance(old, logging.handlers.MemoryHandler):
            # if we had a MemoryHandler before, we should give it the new handler where we can flush it
            old.setTarget(handler)
        elif old is not _handlers.get("current"):
            # handlers installed by someone else stay
            continue

        # stop the old handler
        old.flush()
        old.close()
        root.removeHandler(old)

    root.addHandler(handler)
    _handlers["current"] = handler


def configure_logging(config: LoggingSchema) -> None:
    _set_logging_handler(config)
    _set_log_level(config)


def logger_startup() -> None:
    logging.getLogger().setLevel(LOGGING_LEVEL_STARTUP)
    err_handler = logging.StreamHandler(sys.stderr)
    err_handler.setFormatter(logging.Formatter(logging.BASIC_FORMAT))
    logging.getLogger().addHandler(logging.handlers.MemoryHandler(10_000, logging.ERROR, err_handler))
