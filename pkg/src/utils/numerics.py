"""
Numerical helpers shared by the moment engine, bounds and verification code.
"""

import math
import logging
from typing import Iterable, Union

import numpy as np

logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, Iterable[float]]

def stable_sum(values: ArrayLike) -> float:
    """
    Exactly rounded sum of floating point values.

    The result does not depend on the order of the values, so enumerations
    and partitioned reductions give bit-identical totals.

    Args:
        values: Array or iterable of floats

    Returns:
        Correctly rounded sum
    """
    if isinstance(values, np.ndarray):
        return math.fsum(values.ravel().tolist())
    return math.fsum(values)

def abs_power(x: ArrayLike, t: float) -> np.ndarray:
    """
    Vectorised |x|^t with |0|^t = 0 for t > 0.

    Args:
        x: Values
        t: Positive exponent

    Returns:
        Array of |x|^t
    """
    magnitudes = np.abs(np.asarray(x, dtype=np.float64))
    if float(t).is_integer():
        return magnitudes ** int(t)
    return np.power(magnitudes, float(t))

def scalar_abs_power(x: float, t: float) -> float:
    """|x|^t for a scalar, with |0|^t = 0."""
    if x == 0.0:
        return 0.0
    if float(t).is_integer():
        return abs(x) ** int(t)
    return math.exp(t * math.log(abs(x)))

def expectation(values: np.ndarray, weights: np.ndarray, t: float) -> float:
    """
    E|V|^t for a finite law with outcome values and probability weights.

    Args:
        values: Outcome values
        weights: Outcome probabilities
        t: Exponent

    Returns:
        Compensated sum of weights * |values|^t
    """
    return stable_sum(np.asarray(weights, dtype=np.float64) * abs_power(values, t))

def relative_gap(value: float, reference: float) -> float:
    """
    |value - reference| / |reference|, or the absolute gap when reference is 0.

    Args:
        value: Computed value
        reference: Reference value

    Returns:
        Relative gap
    """
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)

def close(value: float, reference: float, rtol: float) -> bool:
    """True when value agrees with reference to relative tolerance rtol."""
    scale = max(abs(value), abs(reference))
    return abs(value - reference) <= rtol * scale or scale == 0.0

def pair_count(n: int) -> int:
    """Number of unordered pairs, C(n, 2) = n(n-1)/2."""
    return n * (n - 1) // 2

def format_number(value: float, digits: int = 12) -> str:
    """Format a float with a fixed number of significant digits."""
    return f"{value:.{digits}g}"
