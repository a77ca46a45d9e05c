"""
Closed-form extremal bounds for moments of ordinary and decoupled bilinear forms.

For 2 < t < 4 the supremum over both moment classes (and for t >= 4 the
infimum over the equality class) is the additive expression

    sum_{pairs} (b_i - a_i^t)(b_j - a_j^t)
  + sum_i (b_i - a_i^t) E|sum_{j != i} a_j U_j|^t
  + E|sum_{pairs} a_i a_j U_i U_j|^t

with Rademacher U_i (the decoupled form has one cross sum per coordinate
list). For t >= 4 the supremum, and for 3 <= t < 4 the infimum, is the
chaos moment of the three-point extremal laws U(a_i, b_i, t).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

from distributions.symmetric_dist import (
    ClassKind, MomentProfile, SymmetricAtomDist, make_extremal, point_mass
)
from moments.moment_engine import FormKind, FormSpec, MomentEngine
from utils.error_handler import InfeasibleProfileError, UnsupportedRegimeError, require
from utils.numerics import close, stable_sum

logger = logging.getLogger(__name__)

class BoundRegime(Enum):
    """Which closed form a bound was evaluated with."""
    SUP_2TO4 = "sup_2to4"
    INF_3TO4 = "inf_3to4"
    SUP_GE4 = "sup_ge4"
    INF_GE4 = "inf_ge4"

    @property
    def is_additive(self) -> bool:
        return self in (BoundRegime.SUP_2TO4, BoundRegime.INF_GE4)

@dataclass(frozen=True)
class BoundReport:
    """A bound value with its additive breakdown (zero-filled for single-expectation regimes)."""
    value: float
    product_term: float
    cross_terms: float
    chaos_term: float
    regime: BoundRegime
    form_kind: FormKind
    t: float
    n: int

    @property
    def terms(self) -> Dict[str, float]:
        return {
            'product_term': self.product_term,
            'cross_terms': self.cross_terms,
            'chaos_term': self.chaos_term,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            'form': self.form_kind.value,
            'regime': self.regime.value,
            't': self.t,
            'n': self.n,
            'value': self.value,
            'terms': self.terms,
        }

def sup_regime(t: float) -> BoundRegime:
    require(t > 2.0, f"Exponent t must exceed 2, got {t}")
    return BoundRegime.SUP_2TO4 if t < 4.0 else BoundRegime.SUP_GE4

def inf_regime(t: float) -> BoundRegime:
    require(t > 2.0, f"Exponent t must exceed 2, got {t}")
    if t < 3.0:
        raise UnsupportedRegimeError("no infimum formula for 2<t<3")
    return BoundRegime.INF_3TO4 if t < 4.0 else BoundRegime.INF_GE4

def extremal_law(profile: MomentProfile) -> SymmetricAtomDist:
    """
    U(a, b, t) for a profile, with the point mass standing in when a = 0.

    Under M2 a profile with a = 0 < b only admits X = 0, so the point mass is
    the extremal law there as well.
    """
    if profile.a == 0.0:
        return point_mass()
    return make_extremal(profile.a, profile.b, profile.t)

class ExtremalBoundCalculator:
    """Evaluates the sup/inf bounds for both form kinds in every t-regime."""

    def __init__(self, engine: Optional[MomentEngine] = None):
        """
        Initialize the bound calculator.

        Args:
            engine: Moment engine for the Rademacher and extremal-chaos terms
        """
        self.engine = engine or MomentEngine()
        logger.debug("Initialized extremal bound calculator")

    # Validation

    def _validate(self, profiles: Sequence[MomentProfile], t: float,
                  y_profiles: Optional[Sequence[MomentProfile]] = None) -> None:
        require(t > 2.0, f"Exponent t must exceed 2, got {t}")
        require(len(profiles) >= 2, f"Need at least two coordinates, got {len(profiles)}")
        lists = [profiles] if y_profiles is None else [profiles, y_profiles]
        if y_profiles is not None:
            require(len(y_profiles) == len(profiles),
                    "Both coordinate lists must have the same length")
        for profile_list in lists:
            for profile in profile_list:
                if not isinstance(profile, MomentProfile):
                    raise TypeError(f"Expected MomentProfile, got {type(profile).__name__}")
                if not close(profile.t, t, 1e-12):
                    raise InfeasibleProfileError(
                        f"All profiles must share t={t}, found t={profile.t}")

    def _require_equality_class(self, *profile_lists: Sequence[MomentProfile]) -> None:
        for profile_list in profile_lists:
            if any(p.class_kind is not ClassKind.M1 for p in profile_list):
                raise UnsupportedRegimeError("Infimum bounds are only defined over the M1 class")

    # Building blocks

    def _leave_one_out(self, coeffs: Sequence[float], t: float) -> Tuple[float, ...]:
        """E|sum_{j != i} c_j U_j|^t for every i."""
        return tuple(
            self.engine.moment_linear_rademacher([c for j, c in enumerate(coeffs) if j != i], t)
            for i in range(len(coeffs))
        )

    def additive_ordinary(self, profiles: Sequence[MomentProfile], t: float) -> Tuple[float, float, float]:
        """
        The three additive terms of the ordinary-form expression.

        Args:
            profiles: Per-coordinate profiles
            t: Exponent

        Returns:
            (product_term, cross_terms, chaos_term)
        """
        excess = [p.excess for p in profiles]
        a = [p.a for p in profiles]

        product = stable_sum([excess[i] * excess[j]
                              for i in range(len(excess)) for j in range(i + 1, len(excess))])

        cross = 0.0
        if any(excess):
            loo = self._leave_one_out(a, t)
            cross = stable_sum([e * m for e, m in zip(excess, loo)])

        chaos = self.engine.rademacher_chaos_moment(a, t)
        return product, cross, chaos

    def additive_decoupled(self, x_profiles: Sequence[MomentProfile],
                           y_profiles: Sequence[MomentProfile], t: float) -> Tuple[float, float, float]:
        """
        The additive terms of the decoupled-form expression.

        Args:
            x_profiles: Profiles (a_i, b_i) of the X list
            y_profiles: Profiles (c_j, d_j) of the Y list
            t: Exponent

        Returns:
            (product_term, cross_terms, chaos_term); cross_terms sums both cross sums
        """
        x_excess = [p.excess for p in x_profiles]
        y_excess = [p.excess for p in y_profiles]
        a = [p.a for p in x_profiles]
        c = [p.a for p in y_profiles]

        n = len(x_profiles)
        product = stable_sum([x_excess[i] * y_excess[j]
                              for i in range(n) for j in range(n) if i != j])

        cross_parts = []
        if any(y_excess):
            cross_parts.extend(f * m for f, m in zip(y_excess, self._leave_one_out(a, t)))
        if any(x_excess):
            cross_parts.extend(e * m for e, m in zip(x_excess, self._leave_one_out(c, t)))
        cross = stable_sum(cross_parts)

        chaos = self.engine.rademacher_decoupled_moment(a, c, t)
        return product, cross, chaos

    def extremal_chaos(self, kind: FormKind, x_profiles: Sequence[MomentProfile], t: float,
                       y_profiles: Sequence[MomentProfile] = ()) -> float:
        """
        E|form|^t with every coordinate replaced by its three-point extremal law.

        Equal magnitudes go through the lattice reduction, anything else
        through exact enumeration of the 3^n (or 9^n) product support.

        Args:
            kind: Form kind
            x_profiles: X-list profiles
            t: Exponent
            y_profiles: Y-list profiles (decoupled only)

        Returns:
            The chaos moment
        """
        x_dists = tuple(extremal_law(p) for p in x_profiles)
        y_dists = tuple(extremal_law(p) for p in y_profiles)
        return self.engine.three_point_chaos(FormSpec(kind, x_dists, t, y_dists))

    def _report(self, regime: BoundRegime, kind: FormKind, t: float, n: int,
                terms: Optional[Tuple[float, float, float]] = None,
                value: Optional[float] = None) -> BoundReport:
        if terms is not None:
            product, cross, chaos = terms
            value = product + cross + chaos
        else:
            product = cross = chaos = 0.0
        report = BoundReport(max(value, 0.0), product, cross, chaos, regime, kind, float(t), n)
        logger.debug(f"{kind.value} {regime.value} bound at t={t}, n={n}: {report.value:.12g}")
        return report

    # Bounds

    def sup_ordinary(self, profiles: Sequence[MomentProfile], t: float) -> BoundReport:
        """
        sup E|sum_{i<j} X_i X_j|^t over M1 or M2 with the given profiles.

        Args:
            profiles: Per-coordinate profiles (either class kind)
            t: Exponent, t > 2

        Returns:
            Bound report; additive breakdown for 2 < t < 4
        """
        self._validate(profiles, t)
        regime = sup_regime(t)
        if regime is BoundRegime.SUP_2TO4:
            return self._report(regime, FormKind.ORDINARY, t, len(profiles),
                                terms=self.additive_ordinary(profiles, t))
        return self._report(regime, FormKind.ORDINARY, t, len(profiles),
                            value=self.extremal_chaos(FormKind.ORDINARY, profiles, t))

    def sup_decoupled(self, x_profiles: Sequence[MomentProfile],
                      y_profiles: Sequence[MomentProfile], t: float) -> BoundReport:
        """
        sup E|sum_{i != j} X_i Y_j|^t over the product of the two classes.

        Args:
            x_profiles: Profiles (a_i, b_i)
            y_profiles: Profiles (c_j, d_j)
            t: Exponent, t > 2

        Returns:
            Bound report; additive breakdown for 2 < t < 4
        """
        self._validate(x_profiles, t, y_profiles)
        regime = sup_regime(t)
        if regime is BoundRegime.SUP_2TO4:
            return self._report(regime, FormKind.DECOUPLED, t, len(x_profiles),
                                terms=self.additive_decoupled(x_profiles, y_profiles, t))
        return self._report(regime, FormKind.DECOUPLED, t, len(x_profiles),
                            value=self.extremal_chaos(FormKind.DECOUPLED, x_profiles, t, y_profiles))

    def inf_ordinary(self, profiles: Sequence[MomentProfile], t: float) -> BoundReport:
        """
        inf E|sum_{i<j} X_i X_j|^t over M1 with the given profiles.

        Args:
            profiles: Per-coordinate M1 profiles
            t: Exponent, t >= 3

        Returns:
            Bound report; additive breakdown for t >= 4

        Raises:
            UnsupportedRegimeError: For 2 < t < 3 or M2 profiles
        """
        self._validate(profiles, t)
        regime = inf_regime(t)
        self._require_equality_class(profiles)
        if regime is BoundRegime.INF_GE4:
            return self._report(regime, FormKind.ORDINARY, t, len(profiles),
                                terms=self.additive_ordinary(profiles, t))
        return self._report(regime, FormKind.ORDINARY, t, len(profiles),
                            value=self.extremal_chaos(FormKind.ORDINARY, profiles, t))

    def inf_decoupled(self, x_profiles: Sequence[MomentProfile],
                      y_profiles: Sequence[MomentProfile], t: float) -> BoundReport:
        """
        inf E|sum_{i != j} X_i Y_j|^t over M1 x M1.

        Args:
            x_profiles: Profiles (a_i, b_i)
            y_profiles: Profiles (c_j, d_j)
            t: Exponent, t >= 3

        Returns:
            Bound report; additive breakdown for t >= 4

        Raises:
            UnsupportedRegimeError: For 2 < t < 3 or M2 profiles
        """
        self._validate(x_profiles, t, y_profiles)
        regime = inf_regime(t)
        self._require_equality_class(x_profiles, y_profiles)
        if regime is BoundRegime.INF_GE4:
            return self._report(regime, FormKind.DECOUPLED, t, len(x_profiles),
                                terms=self.additive_decoupled(x_profiles, y_profiles, t))
        return self._report(regime, FormKind.DECOUPLED, t, len(x_profiles),
                            value=self.extremal_chaos(FormKind.DECOUPLED, x_profiles, t, y_profiles))

    def bound(self, kind: FormKind, side: str, x_profiles: Sequence[MomentProfile], t: float,
              y_profiles: Optional[Sequence[MomentProfile]] = None) -> BoundReport:
        """
        Dispatch to the sup/inf bound for a form kind.

        Args:
            kind: Form kind
            side: "sup" or "inf"
            x_profiles: X-list profiles
            t: Exponent
            y_profiles: Y-list profiles, required for the decoupled form

        Returns:
            Bound report
        """
        if side not in ("sup", "inf"):
            raise ValueError(f"side must be 'sup' or 'inf', got {side!r}")
        if kind is FormKind.ORDINARY:
            return self.sup_ordinary(x_profiles, t) if side == "sup" else self.inf_ordinary(x_profiles, t)
        if y_profiles is None:
            raise ValueError("Decoupled bounds need Y-list profiles")
        if side == "sup":
            return self.sup_decoupled(x_profiles, y_profiles, t)
        return self.inf_decoupled(x_profiles, y_profiles, t)
