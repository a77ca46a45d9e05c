"""
Error handling utilities for the moment bound toolkit.
"""

import functools
import logging
from typing import Callable, Optional

logger = logging.getLogger(__name__)

class MomentBoundError(Exception):
    """Base exception for moment bound computations."""
    pass

class InfeasibleProfileError(MomentBoundError):
    """Exception raised when a moment profile violates a^t <= b or related constraints."""
    pass

class UnsupportedRegimeError(MomentBoundError):
    """Exception raised when no formula is available for the requested regime."""
    pass

class EnumerationCapError(MomentBoundError):
    """Exception raised when an exact enumeration would exceed the configured cap."""

    def __init__(self, size: float, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(
            f"Enumeration of {size:.3g} outcomes exceeds cap {cap}; "
            f"use a Rademacher reduction or Monte Carlo"
        )

class SamplingError(MomentBoundError):
    """Exception raised when random class-member sampling finds no feasible law."""
    pass

class ProblemFileError(MomentBoundError):
    """Exception raised when a problem file is malformed."""

    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        self.message = message
        super().__init__(f"{path}:{line}: {message}")

def retry_with_fresh_seed(max_retries: int = 5) -> Callable:
    """
    Decorator to retry a seeded sampler with derived seeds on SamplingError.

    The wrapped callable must accept an integer ``seed`` keyword argument.
    Retries use seeds derived from (seed, attempt), so the sequence of
    attempts is reproducible.

    Args:
        max_retries: Number of attempts before giving up

    Returns:
        Decorator adding the retry loop
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, seed=0, **kwargs):
            attempt_seed = seed
            for attempt in range(max_retries):
                try:
                    return func(*args, seed=attempt_seed, **kwargs)
                except SamplingError as e:
                    logger.warning(f"Sampling failed on attempt {attempt + 1}/{max_retries}: {e}")
                    attempt_seed = _derive_seed(seed, attempt + 1)
            raise SamplingError(f"Sampling failed after {max_retries} attempts")

        return wrapper

    return decorator

def _derive_seed(seed: int, attempt: int) -> int:
    return (seed * 1_000_003 + attempt * 7_919) % (2**63)

def log_error(error: Exception, context: str = "") -> None:
    """
    Log an error with context information.

    Args:
        error: The exception that occurred
        context: Additional context about where the error occurred
    """
    error_msg = f"Error in {context}: {type(error).__name__}: {str(error)}"
    logger.error(error_msg)

    if isinstance(error, EnumerationCapError):
        logger.error(f"Enumeration details: size={error.size:.3g}, cap={error.cap}")
    elif isinstance(error, ProblemFileError):
        logger.error(f"Problem file details: path={error.path}, line={error.line}")

def require(condition: bool, message: str,
            error_type: Optional[type] = None) -> None:
    """
    Raise ``error_type`` (InfeasibleProfileError by default) unless condition holds.

    Args:
        condition: Condition that must be true
        message: Error message
        error_type: Exception class to raise
    """
    if not condition:
        raise (error_type or InfeasibleProfileError)(message)
