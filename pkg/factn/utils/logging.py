"""
Logging utilities
Reports own stdout, so every handler here writes to stderr or a file.
Console output is colored on a terminal; FACTN_LOG_FORMAT=json switches
every handler to JSON lines.
"""
import functools
import logging
import sys
import time
from pathlib import Path
from typing import Optional

from pythonjsonlogger import jsonlogger

TEXT_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"
JSON_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"
CONSOLE_FORMAT = "%(levelname)s %(message)s"

# ANSI escape per level number; unknown levels stay plain
LEVEL_COLORS = {
    logging.DEBUG: "\033[2;36m",
    logging.INFO: "\033[32m",
    logging.WARNING: "\033[1;33m",
    logging.ERROR: "\033[1;31m",
    logging.CRITICAL: "\033[1;37;41m",
}
RESET = "\033[0m"


# ============================================
# Formatters
# ============================================

class ColoredFormatter(logging.Formatter):
    """Console formatter that tints the level name"""

    def format(self, record: logging.LogRecord) -> str:
        color = LEVEL_COLORS.get(record.levelno)
        if color is None:
            return super().format(record)
        # the file handler shares this record, so tint a copy
        tinted = logging.makeLogRecord(record.__dict__)
        tinted.levelname = f"{color}{record.levelname:<8}{RESET}"
        return super().format(tinted)


def _formatter(fmt: str, console: bool) -> logging.Formatter:
    if fmt == "json":
        return jsonlogger.JsonFormatter(JSON_FORMAT)
    if console and sys.stderr.isatty():
        return ColoredFormatter(CONSOLE_FORMAT)
    return logging.Formatter(TEXT_FORMAT, datefmt="%H:%M:%S")


# ============================================
# Setup
# ============================================

def setup_logging(
    level: str = "WARNING",
    log_file: Optional[str] = None,
    fmt: str = "text"
) -> None:
    """
    Replace the root handlers with a stderr handler and an optional file

    Args:
        level: Level name, any case
        log_file: Extra log file, appended to; parent directories are created
        fmt: "text" or "json"
    """
    root = logging.getLogger()
    numeric = logging.getLevelName((level or "WARNING").upper())
    root.setLevel(numeric if isinstance(numeric, int) else logging.WARNING)
    for handler in list(root.handlers):
        root.removeHandler(handler)

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(_formatter(fmt, console=True))
    root.addHandler(console)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(path, mode="a", encoding="utf-8")
        handler.setFormatter(_formatter(fmt, console=False))
        root.addHandler(handler)

    root.debug(f"📝 Logging ready: level={level} format={fmt} file={log_file or '-'}")


# ============================================
# Decorators
# ============================================

def log_function_call(logger: Optional[logging.Logger] = None):
    """
    Trace a long-running entry point at DEBUG: arguments on entry, elapsed
    time on return, and the exception type when it raises
    """
    def decorator(func):
        name = func.__qualname__

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            log = logger or logging.getLogger(func.__module__)
            log.debug(f"▶️ {name} args={args} kwargs={kwargs}")
            started = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                log.debug(f"💥 {name} raised {type(e).__name__} after {time.perf_counter() - started:.3f}s")
                raise
            log.debug(f"⏱️ {name} done in {time.perf_counter() - started:.3f}s")
            return result

        return wrapper
    return decorator
