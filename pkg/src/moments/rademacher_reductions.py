"""
Closed combinatorial reductions for moments of Rademacher sums and chaoses.

All routines here are exact up to floating point rounding and avoid the 2^n
(or 4^n) enumeration: sums and ordinary chaoses reduce to a binomial sum over
the number of minus signs, and the decoupled chaos to a dynamic program over
the joint law of (S_U, S_V, D) with D = sum_i U_i V_i.

The lattice variants allow each coordinate to be 0 with probability 1 - q_i,
which is the law of a three-point extremal variable divided by its magnitude.
"""

import logging
from typing import Sequence

import numpy as np
from scipy.special import comb

from utils.numerics import stable_sum, abs_power

logger = logging.getLogger(__name__)

def binomial_weights(n: int) -> np.ndarray:
    """C(n, k) / 2^n for k = 0..n, each correctly rounded."""
    denominator = 2 ** n
    return np.array([comb(n, k, exact=True) / denominator for k in range(n + 1)],
                    dtype=np.float64)

def rademacher_sum_moment(n: int, t: float) -> float:
    """
    E|U_1 + ... + U_n|^t for independent Rademacher U_i.

    Args:
        n: Number of summands (0 gives 0)
        t: Positive exponent

    Returns:
        sum_k C(n, k) 2^{-n} |n - 2k|^t
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return 0.0
    k = np.arange(n + 1)
    return stable_sum(binomial_weights(n) * abs_power(n - 2 * k, t))

def rademacher_chaos_ordinary(n: int, t: float) -> float:
    """
    E|sum_{i<j} U_i U_j|^t for independent Rademacher U_i.

    Uses sum_{i<j} U_i U_j = (S^2 - n) / 2 with S = U_1 + ... + U_n.

    Args:
        n: Number of variables (fewer than 2 gives 0)
        t: Positive exponent

    Returns:
        sum_k C(n, k) 2^{-n} |((n - 2k)^2 - n) / 2|^t
    """
    if n < 2:
        return 0.0
    k = np.arange(n + 1)
    s = (n - 2 * k).astype(np.float64)
    return stable_sum(binomial_weights(n) * abs_power((s * s - n) / 2.0, t))

def rademacher_chaos_decoupled(n: int, t: float) -> float:
    """
    E|sum_{i != j} U_i V_j|^t for independent Rademacher U_i, V_j.

    Args:
        n: Number of index pairs (fewer than 2 gives 0)
        t: Positive exponent

    Returns:
        The exact moment, from the joint law of (S_U, S_V, D)
    """
    if n < 2:
        return 0.0
    return lattice_chaos_decoupled(np.ones(n), np.ones(n), t)

def lattice_chaos_ordinary(activity: Sequence[float], t: float) -> float:
    """
    E|sum_{i<j} e_i e_j|^t for independent e_i in {-1, 0, 1}, P(e_i = +-1) = q_i / 2.

    The chaos equals (S^2 - K) / 2 where S is the sum and K the number of
    nonzero coordinates, so a DP over (S, K) suffices.

    Args:
        activity: Probabilities q_i = P(e_i != 0)
        t: Positive exponent

    Returns:
        The exact moment
    """
    q = np.asarray(activity, dtype=np.float64)
    n = q.size
    if n < 2:
        return 0.0

    # table[s + n, k] = P(S = s, K = k)
    table = np.zeros((2 * n + 1, n + 1))
    table[n, 0] = 1.0
    for q_i in q:
        moved = np.roll(table, 1, axis=1)
        table = (1.0 - q_i) * table + 0.5 * q_i * (np.roll(moved, 1, axis=0) + np.roll(moved, -1, axis=0))

    s = np.arange(-n, n + 1, dtype=np.float64)[:, None]
    k = np.arange(n + 1, dtype=np.float64)[None, :]
    chaos = (s * s - k) / 2.0
    return stable_sum(table * abs_power(chaos, t))

def lattice_chaos_decoupled(x_activity: Sequence[float], y_activity: Sequence[float],
                            t: float) -> float:
    """
    E|sum_{i != j} e_i h_j|^t for independent lattice coordinates e_i, h_j.

    e_i, h_j take values in {-1, 0, 1} with P(e_i = +-1) = q_i / 2 and
    P(h_j = +-1) = r_j / 2. The form equals S_e S_h - D with D = sum_i e_i h_i;
    the DP tracks the joint law of (S_e, S_h, D) over (2n+1)^3 states.

    Args:
        x_activity: Probabilities q_i
        y_activity: Probabilities r_j
        t: Positive exponent

    Returns:
        The exact moment
    """
    q = np.asarray(x_activity, dtype=np.float64)
    r = np.asarray(y_activity, dtype=np.float64)
    if q.size != r.size:
        raise ValueError("Both coordinate lists must have the same length")
    n = q.size
    if n < 2:
        return 0.0

    size = 2 * n + 1
    table = np.zeros((size, size, size))
    table[n, n, n] = 1.0
    for q_i, r_i in zip(q, r):
        step = np.zeros_like(table)
        x_law = ((-1, 0.5 * q_i), (0, 1.0 - q_i), (1, 0.5 * q_i))
        y_law = ((-1, 0.5 * r_i), (0, 1.0 - r_i), (1, 0.5 * r_i))
        for e, p_e in x_law:
            if p_e == 0.0:
                continue
            for h, p_h in y_law:
                if p_h == 0.0:
                    continue
                shifted = np.roll(table, (e, h, e * h), axis=(0, 1, 2))
                step += (p_e * p_h) * shifted
        table = step

    axis = np.arange(-n, n + 1, dtype=np.float64)
    s_x = axis[:, None, None]
    s_y = axis[None, :, None]
    d = axis[None, None, :]
    return stable_sum(table * abs_power(s_x * s_y - d, t))
