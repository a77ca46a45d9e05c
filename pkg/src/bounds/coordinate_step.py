"""
Single-coordinate replacement step behind the additive bounds.

For 2 < t < 4, replacing one coordinate X_k (with EX_k^2 <= a_k^2 and
E|X_k|^t <= b_k) by the extremal limit can only increase

    sum_{i != k} w_i E|sum_{j != i} X_j|^t + E|form|^t,

and the supremum is the closed expression computed here. For t >= 4 the same
expression is the infimum over laws with EX_k^2 = a_k^2 and E|X_k|^t = b_k.
Applying the step coordinate by coordinate yields the additive bounds.
"""

import logging
from typing import Optional, Sequence

from distributions.symmetric_dist import MomentProfile, SymmetricAtomDist, make_rademacher
from moments.moment_engine import FormKind, FormSpec, MomentEngine
from utils.error_handler import require
from utils.numerics import stable_sum

logger = logging.getLogger(__name__)

def _check_inputs(kind: FormKind, x_dists: Sequence[SymmetricAtomDist], k: int,
                  weights: Sequence[float], y_dists: Sequence[SymmetricAtomDist]) -> None:
    require(0 <= k < len(x_dists), f"Coordinate index {k} out of range for n={len(x_dists)}")
    require(len(weights) == len(x_dists), "Need one weight per coordinate")
    if kind is FormKind.DECOUPLED:
        require(len(y_dists) == len(x_dists), "Decoupled step needs one Y law per X law")

def _leave_one_out_sums(engine: MomentEngine, x_dists: Sequence[SymmetricAtomDist],
                        k: int, weights: Sequence[float], t: float) -> float:
    parts = []
    for i, w in enumerate(weights):
        if i == k or w == 0.0:
            continue
        rest = [d for j, d in enumerate(x_dists) if j != i]
        parts.append(w * engine.moment_linear(rest, [1.0] * len(rest), t))
    return stable_sum(parts)

def coordinate_objective(kind: FormKind, x_dists: Sequence[SymmetricAtomDist], k: int,
                         t: float, weights: Sequence[float],
                         y_dists: Sequence[SymmetricAtomDist] = (),
                         engine: Optional[MomentEngine] = None) -> float:
    """
    sum_{i != k} w_i E|sum_{j != i} X_j|^t + E|form|^t for the given laws.

    Args:
        kind: Form kind
        x_dists: Laws of X_1..X_n, including the varied coordinate X_k
        k: Index of the varied coordinate
        t: Exponent
        weights: Weights w_i; the entry at k is ignored
        y_dists: Laws of Y_1..Y_n (decoupled only)
        engine: Moment engine

    Returns:
        The objective value
    """
    engine = engine or MomentEngine()
    _check_inputs(kind, x_dists, k, weights, y_dists)
    linear = _leave_one_out_sums(engine, x_dists, k, weights, t)
    form = engine.moment_bilinear(FormSpec(kind, tuple(x_dists), t, tuple(y_dists)))
    return linear + form

def coordinate_step_bound(kind: FormKind, x_dists: Sequence[SymmetricAtomDist], k: int,
                          profile: MomentProfile, t: float, weights: Sequence[float],
                          y_dists: Sequence[SymmetricAtomDist] = (),
                          engine: Optional[MomentEngine] = None) -> float:
    """
    Closed value of the single-coordinate step for X_k with the given profile.

    Equals

        sum_{i != k} w_i (E|a_k U_k + sum_{j != i, k} X_j|^t + b_k - a_k^t)
      + (b_k - a_k^t) E|T_k|^t
      + E|form with X_k replaced by a_k U_k|^t

    where T_k = sum_{j != k} X_j for the ordinary form and sum_{j != k} Y_j
    for the decoupled one.

    Args:
        kind: Form kind
        x_dists: Laws of the coordinates; the entry at k is ignored
        k: Index of the replaced coordinate
        profile: Profile (a_k, b_k) of the replaced coordinate
        t: Exponent
        weights: Weights w_i; the entry at k is ignored
        y_dists: Laws of Y_1..Y_n (decoupled only)
        engine: Moment engine

    Returns:
        The step value (sup for 2 < t < 4, inf for t >= 4)
    """
    engine = engine or MomentEngine()
    _check_inputs(kind, x_dists, k, weights, y_dists)
    excess = profile.excess

    witness = list(x_dists)
    witness[k] = make_rademacher(profile.a)
    linear = _leave_one_out_sums(engine, witness, k, weights, t)
    linear += excess * stable_sum([w for i, w in enumerate(weights) if i != k])

    tail_dists = [d for j, d in enumerate(y_dists if kind is FormKind.DECOUPLED else x_dists) if j != k]
    tail = excess * engine.moment_linear(tail_dists, [1.0] * len(tail_dists), t) if excess else 0.0

    chaos = engine.moment_bilinear(FormSpec(kind, tuple(witness), t, tuple(y_dists)))
    value = linear + tail + chaos
    logger.debug(f"Coordinate step k={k} ({kind.value}, t={t}): {value:.12g}")
    return value
