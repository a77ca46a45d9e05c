"""
Exact moments of linear and bilinear forms in independent finite-support symmetric variables.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from config.settings import ENUM_CAP
from distributions.symmetric_dist import SymmetricAtomDist, make_rademacher, uniform_magnitude
from utils.error_handler import EnumerationCapError
from utils.numerics import stable_sum, abs_power, scalar_abs_power
from .rademacher_reductions import (
    rademacher_sum_moment, rademacher_chaos_ordinary, rademacher_chaos_decoupled,
    lattice_chaos_ordinary, lattice_chaos_decoupled
)

logger = logging.getLogger(__name__)

class FormKind(Enum):
    """Which bilinear form: sum_{i<j} X_i X_j or sum_{i != j} X_i Y_j."""
    ORDINARY = "ordinary"
    DECOUPLED = "decoupled"

@dataclass(frozen=True)
class FormSpec:
    """A bilinear form together with the laws of its coordinates and the exponent."""
    kind: FormKind
    x_dists: Tuple[SymmetricAtomDist, ...]
    t: float
    y_dists: Tuple[SymmetricAtomDist, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, 'kind', FormKind(self.kind))
        object.__setattr__(self, 'x_dists', tuple(self.x_dists))
        object.__setattr__(self, 'y_dists', tuple(self.y_dists))
        if self.t <= 0:
            raise ValueError(f"Exponent must be positive, got {self.t}")
        if self.kind is FormKind.DECOUPLED and len(self.y_dists) != len(self.x_dists):
            raise ValueError("Decoupled form needs one Y law per X law")
        if self.kind is FormKind.ORDINARY and self.y_dists:
            raise ValueError("Ordinary form takes no Y laws")

    @property
    def n(self) -> int:
        return len(self.x_dists)

    def all_dists(self) -> Tuple[SymmetricAtomDist, ...]:
        return self.x_dists + self.y_dists

    def enumeration_size(self) -> float:
        """Number of weighted outcomes of the full product enumeration."""
        return math.prod(float(d.support_size) for d in self.all_dists())

class MomentEngine:
    """Computes E|form|^t by exact enumeration, combinatorial reduction or Monte Carlo."""

    def __init__(self, enum_cap: Optional[int] = None):
        """
        Initialize moment engine.

        Args:
            enum_cap: Maximum number of weighted outcomes an exact enumeration may visit
        """
        self.enum_cap = int(enum_cap) if enum_cap is not None else ENUM_CAP
        logger.debug(f"Initialized moment engine with enumeration cap {self.enum_cap}")

    def _check_cap(self, size: float) -> None:
        if size > self.enum_cap:
            raise EnumerationCapError(size, self.enum_cap)
        if size > self.enum_cap / 10:
            logger.warning(f"Enumerating {size:.3g} outcomes (cap {self.enum_cap})")

    # Linear forms

    def moment_linear(self, dists: Sequence[SymmetricAtomDist], coeffs: Sequence[float],
                      t: float) -> float:
        """
        E|sum_i c_i X_i|^t by full enumeration of the product law.

        Args:
            dists: Laws of X_1..X_n
            coeffs: Real coefficients c_1..c_n
            t: Positive exponent

        Returns:
            The exact moment

        Raises:
            EnumerationCapError: If the product support exceeds the cap
        """
        if len(dists) != len(coeffs):
            raise ValueError("Need one coefficient per distribution")
        self._check_cap(math.prod(float(d.support_size) for d in dists))

        values = np.zeros(1)
        probs = np.ones(1)
        for dist, c in zip(dists, coeffs):
            support, weights = dist.support()
            values = (values[:, None] + c * support[None, :]).ravel()
            probs = (probs[:, None] * weights[None, :]).ravel()
        return stable_sum(probs * abs_power(values, t))

    def rademacher_sum_moment(self, n: int, t: float) -> float:
        """E|U_1 + ... + U_n|^t via the binomial reduction."""
        return rademacher_sum_moment(n, t)

    def moment_linear_rademacher(self, coeffs: Sequence[float], t: float) -> float:
        """
        E|sum_i c_i U_i|^t for Rademacher U_i and arbitrary real coefficients.

        Zero coefficients drop out; equal magnitudes use the binomial reduction.

        Args:
            coeffs: Coefficients c_i
            t: Positive exponent

        Returns:
            The exact moment
        """
        active = [abs(c) for c in coeffs if c != 0.0]
        if not active:
            return 0.0
        if all(c == active[0] for c in active):
            return scalar_abs_power(active[0], t) * rademacher_sum_moment(len(active), t)
        return self.moment_linear([make_rademacher(1.0)] * len(active), active, t)

    # Bilinear forms

    def moment_bilinear(self, spec: FormSpec) -> float:
        """
        E|form|^t by exact enumeration of the product law.

        The ordinary form is accumulated through the states (S, Q) with
        Q_new = Q + x S and S_new = S + x; the decoupled form through
        (S_X, S_Y, D) with value S_X S_Y - D.

        Args:
            spec: Form and coordinate laws

        Returns:
            The exact moment

        Raises:
            EnumerationCapError: If the product support exceeds the cap
        """
        self._check_cap(spec.enumeration_size())
        if spec.n < 2:
            return 0.0
        if spec.kind is FormKind.ORDINARY:
            return self._enumerate_ordinary(spec.x_dists, spec.t)
        return self._enumerate_decoupled(spec.x_dists, spec.y_dists, spec.t)

    def _enumerate_ordinary(self, dists: Sequence[SymmetricAtomDist], t: float) -> float:
        total = np.zeros(1)
        chaos = np.zeros(1)
        probs = np.ones(1)
        for dist in dists:
            support, weights = dist.support()
            chaos = (chaos[:, None] + total[:, None] * support[None, :]).ravel()
            total = (total[:, None] + support[None, :]).ravel()
            probs = (probs[:, None] * weights[None, :]).ravel()
        return stable_sum(probs * abs_power(chaos, t))

    def _enumerate_decoupled(self, x_dists: Sequence[SymmetricAtomDist],
                             y_dists: Sequence[SymmetricAtomDist], t: float) -> float:
        sum_x = np.zeros(1)
        sum_y = np.zeros(1)
        diagonal = np.zeros(1)
        probs = np.ones(1)
        for x_dist, y_dist in zip(x_dists, y_dists):
            x_support, x_weights = x_dist.support()
            y_support, y_weights = y_dist.support()
            # joint outcomes of the pair (X_i, Y_i), x-major
            pair_x = np.repeat(x_support, y_support.size)
            pair_y = np.tile(y_support, x_support.size)
            pair_w = np.outer(x_weights, y_weights).ravel()

            sum_x = (sum_x[:, None] + pair_x[None, :]).ravel()
            sum_y = (sum_y[:, None] + pair_y[None, :]).ravel()
            diagonal = (diagonal[:, None] + (pair_x * pair_y)[None, :]).ravel()
            probs = (probs[:, None] * pair_w[None, :]).ravel()
        return stable_sum(probs * abs_power(sum_x * sum_y - diagonal, t))

    def rademacher_chaos_ordinary(self, n: int, t: float) -> float:
        """E|sum_{i<j} U_i U_j|^t via the binomial reduction."""
        return rademacher_chaos_ordinary(n, t)

    def rademacher_chaos_decoupled(self, n: int, t: float) -> float:
        """E|sum_{i != j} U_i V_j|^t via the (S_U, S_V, D) dynamic program."""
        return rademacher_chaos_decoupled(n, t)

    def rademacher_chaos_moment(self, coeffs: Sequence[float], t: float) -> float:
        """
        E|sum_{i<j} c_i c_j U_i U_j|^t for Rademacher U_i.

        Args:
            coeffs: Coefficients c_i
            t: Positive exponent

        Returns:
            The exact moment (binomial reduction when all nonzero |c_i| agree)
        """
        active = [abs(c) for c in coeffs if c != 0.0]
        if len(active) < 2:
            return 0.0
        if all(c == active[0] for c in active):
            return scalar_abs_power(active[0], 2.0 * t) * rademacher_chaos_ordinary(len(active), t)
        spec = FormSpec(FormKind.ORDINARY, tuple(make_rademacher(c) for c in active), t)
        return self.moment_bilinear(spec)

    def rademacher_decoupled_moment(self, x_coeffs: Sequence[float], y_coeffs: Sequence[float],
                                    t: float) -> float:
        """
        E|sum_{i != j} a_i c_j U_i V_j|^t for Rademacher U_i, V_j.

        Args:
            x_coeffs: Coefficients a_i
            y_coeffs: Coefficients c_j
            t: Positive exponent

        Returns:
            The exact moment (lattice DP when the nonzero |a_i| agree and the nonzero |c_j| agree)
        """
        x_dists = tuple(make_rademacher(abs(c)) for c in x_coeffs)
        y_dists = tuple(make_rademacher(abs(c)) for c in y_coeffs)
        return self.three_point_chaos(FormSpec(FormKind.DECOUPLED, x_dists, t, y_dists))

    def three_point_chaos(self, spec: FormSpec) -> float:
        """
        E|form|^t, using the lattice reduction when it applies.

        When every X law (and every Y law) is supported on {0, +-v} for one
        common v, the form divided by v^2 (or v_x v_y) is a lattice chaos and
        the O(n^2) / O(n^4) dynamic program replaces the product enumeration.
        Otherwise this falls back to moment_bilinear.

        Args:
            spec: Form and coordinate laws

        Returns:
            The exact moment
        """
        x_scale = uniform_magnitude(spec.x_dists)
        if spec.kind is FormKind.ORDINARY:
            if x_scale is None:
                return self.moment_bilinear(spec)
            if x_scale == 0.0:
                return 0.0
            activity = [d.activity() for d in spec.x_dists]
            return scalar_abs_power(x_scale, 2.0 * spec.t) * lattice_chaos_ordinary(activity, spec.t)

        y_scale = uniform_magnitude(spec.y_dists)
        if x_scale is None or y_scale is None:
            return self.moment_bilinear(spec)
        if x_scale == 0.0 or y_scale == 0.0:
            return 0.0
        x_activity = [d.activity() for d in spec.x_dists]
        y_activity = [d.activity() for d in spec.y_dists]
        return (scalar_abs_power(x_scale * y_scale, spec.t)
                * lattice_chaos_decoupled(x_activity, y_activity, spec.t))

    # Monte Carlo

    def mc_moment_bilinear(self, spec: FormSpec, samples: int,
                           seed: int = 0) -> Tuple[float, float]:
        """
        Monte Carlo estimate of E|form|^t with its standard error.

        Args:
            spec: Form and coordinate laws
            samples: Number of independent draws, at least 2
            seed: Random seed

        Returns:
            (sample mean, standard error of the mean)
        """
        if samples < 2:
            raise ValueError("Monte Carlo needs at least two samples")
        rng = np.random.default_rng(seed)

        def draw(dists: Sequence[SymmetricAtomDist]) -> np.ndarray:
            columns = []
            for dist in dists:
                support, weights = dist.support()
                columns.append(rng.choice(support, size=samples, p=weights / weights.sum()))
            return np.column_stack(columns) if columns else np.zeros((samples, 0))

        x = draw(spec.x_dists)
        if spec.kind is FormKind.ORDINARY:
            total = x.sum(axis=1)
            form = 0.5 * (total * total - (x * x).sum(axis=1))
        else:
            y = draw(spec.y_dists)
            form = x.sum(axis=1) * y.sum(axis=1) - (x * y).sum(axis=1)

        values = abs_power(form, spec.t)
        estimate = stable_sum(values) / samples
        std_error = float(np.std(values, ddof=1)) / math.sqrt(samples)
        logger.debug(f"Monte Carlo estimate {estimate:.6g} +- {std_error:.2g} ({samples} samples)")
        return estimate, std_error
