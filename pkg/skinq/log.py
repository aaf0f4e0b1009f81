import logging
from typing import Optional

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def configure_logging(verbose: bool = False, level: Optional[int] = None) -> None:
    """Attach a stderr handler to the package logger (idempotent)."""
    root = logging.getLogger("skinq")
    if level is None:
        level = logging.DEBUG if verbose else logging.WARNING
    root.setLevel(level)
    if not any(getattr(h, "_skinq", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler._skinq = True  # type: ignore[attr-defined]
        root.addHandler(handler)
