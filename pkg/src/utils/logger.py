# utils/logger.py
import logging
import os

from rich.console import Console
from rich.logging import RichHandler

_ROOT = "exactapprox"
_configured = False


def _configure() -> None:
    global _configured
    if _configured:
        return
    root = logging.getLogger(_ROOT)
    root.setLevel(os.environ.get("EXACTAPPROX_LOG_LEVEL", "INFO").upper())
    handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False, rich_tracebacks=True)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root.addHandler(handler)
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    _configure()
    return logging.getLogger(f"{_ROOT}.{name}")


def log(message, level: str = "info"):
    getattr(get_logger("run"), level)(f"[ExactApprox Log] {message}")
