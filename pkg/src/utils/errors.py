# utils/errors.py
"""
Exception hierarchy shared by every ExactApprox module.

Each error carries an optional ``details`` dict so the orchestrator can put
structured context next to the message in its error envelope.
"""

from typing import Any, Dict, Optional


class ExactApproxError(Exception):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}


class InsufficientDigitsError(ExactApproxError):
    def __init__(self, needed: int, available: int, what: str = "partial quotients"):
        self.needed = needed
        self.available = available
        self.shortfall = needed - available
        super().__init__(
            f"need {needed} {what} but only {available} available (short by {self.shortfall})",
            {"needed": needed, "available": available, "shortfall": self.shortfall},
        )


class CannotEncloseError(ExactApproxError):
    pass


class IncommensurableSurdsError(ExactApproxError, ValueError):
    pass


class DigitSystemError(ExactApproxError):
    pass


class OutOfRangeError(ExactApproxError):
    def __init__(self, message: str, interval: Optional[str] = None):
        self.interval = interval
        super().__init__(message, {"interval": interval})


class DepthExceededError(ExactApproxError):
    def __init__(self, message: str, blocking: Optional[str] = None, **details: Any):
        self.blocking = blocking
        super().__init__(message, {"blocking": blocking, **details})


class StreamExhaustedError(ExactApproxError):
    pass


class UnsupportedGammaError(ExactApproxError):
    pass


class PadSpecError(ExactApproxError):
    def __init__(self, message: str, position: int = 0):
        self.position = position
        super().__init__(f"{message} (at position {position})", {"position": position})


class PadOutOfTableError(ExactApproxError):
    pass


class ConfigError(ExactApproxError):
    pass


class CertificateError(ExactApproxError):
    pass


class ConstructionError(ExactApproxError):
    pass
