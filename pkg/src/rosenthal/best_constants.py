"""
Best constants in Rosenthal-type inequalities for bilinear forms in i.i.d. symmetric variables.

With C = n(n-1)/2 the four inequalities bound E|form|^t by a constant times

    B4 (ordinary),  B6 (decoupled):  max(C (E|X|^t)^2, C^{t/2} (EX^2)^t)
    B5 (ordinary),  B7 (decoupled):  max(n^2 (E|X|^t)^2, n^t (EX^2)^t)

Each best constant is computed twice: once from the closed formulas as they
are usually printed ("literal"), once by evaluating the extremal bound at the
corner profile that makes the normaliser equal to 1 ("derived"). The derived
route is canonical; the gap between the two is reported, never corrected.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, Dict, Iterable, List, Optional

from bounds.extremal_bounds import ExtremalBoundCalculator, extremal_law
from config.settings import WITNESS_M
from distributions.symmetric_dist import (
    ClassKind, MomentProfile, SymmetricAtomDist, make_approx, moments
)
from moments.moment_engine import FormKind, FormSpec
from utils.error_handler import require
from utils.numerics import pair_count, relative_gap, scalar_abs_power

logger = logging.getLogger(__name__)

GAP_REPORT_RTOL = 1e-9

class ConstantKind(Enum):
    """The four best constants."""
    B4 = "B4"
    B5 = "B5"
    B6 = "B6"
    B7 = "B7"

    @property
    def form_kind(self) -> FormKind:
        return FormKind.ORDINARY if self in (ConstantKind.B4, ConstantKind.B5) else FormKind.DECOUPLED

    @property
    def uses_pair_count(self) -> bool:
        """True for the C_n^2 normalisation, False for the n-power one."""
        return self in (ConstantKind.B4, ConstantKind.B6)

@dataclass(frozen=True)
class ConstantQuery:
    which: ConstantKind
    t: float
    n: int

    def __post_init__(self):
        if isinstance(self.which, str):
            object.__setattr__(self, 'which', ConstantKind(self.which.upper()))
        object.__setattr__(self, 't', float(self.t))
        require(self.t > 2.0, f"Exponent t must exceed 2, got {self.t}")
        require(int(self.n) == self.n and self.n >= 2, f"n must be an integer >= 2, got {self.n}")
        object.__setattr__(self, 'n', int(self.n))

    @property
    def regime(self) -> str:
        return "2<t<4" if self.t < 4.0 else "t>=4"

    @property
    def sort_key(self):
        return (self.which.value, self.t, self.n)

@dataclass(frozen=True)
class ConstantReport:
    """Both routes for one best constant, with their relative gap."""
    query: ConstantQuery
    literal_value: float
    derived_value: float
    relative_gap: float
    regime: str

    def to_row(self) -> Dict[str, Any]:
        """Row in the CSV column order which,t,n,literal,derived,gap."""
        return {
            'which': self.query.which.value,
            't': self.query.t,
            'n': self.query.n,
            'literal': self.literal_value,
            'derived': self.derived_value,
            'gap': self.relative_gap,
        }

    def to_dict(self) -> Dict[str, Any]:
        row = self.to_row()
        row['regime'] = self.regime
        return row

class RosenthalConstantCalculator:
    """Computes B4*..B7* by the literal formulas and by the extremal-bound route."""

    def __init__(self, bounds: Optional[ExtremalBoundCalculator] = None):
        """
        Initialize the constant calculator.

        Args:
            bounds: Extremal bound calculator used by the derived route
        """
        self.bounds = bounds or ExtremalBoundCalculator()
        self.engine = self.bounds.engine
        logger.debug("Initialized Rosenthal constant calculator")

    # Normalisation

    def corner_profile(self, query: ConstantQuery, scale: float = 1.0) -> MomentProfile:
        """
        Profile of the i.i.d. class whose normaliser equals ``scale``.

        Args:
            query: Constant query
            scale: Normaliser value D > 0

        Returns:
            (D^{1/2t} C^{-1/4}, D^{1/2} C^{-1/2}) for B4/B6,
            (D^{1/2t} n^{-1/2}, D^{1/2} n^{-1}) for B5/B7
        """
        require(scale > 0.0, f"Normaliser scale must be positive, got {scale}")
        t, n = query.t, query.n
        base = float(pair_count(n)) if query.which.uses_pair_count else float(n) ** 2
        a = scalar_abs_power(scale, 1.0 / (2.0 * t)) * base ** -0.25
        b = scale ** 0.5 * base ** -0.5
        return MomentProfile(a, b, t, ClassKind.M1)

    def normalizer(self, query: ConstantQuery, dist: SymmetricAtomDist) -> float:
        """
        Right-hand-side normaliser max(...) of the inequality for the law of X_1.

        Args:
            query: Constant query
            dist: Common law of the coordinates

        Returns:
            The max(...) expression
        """
        second, t_moment = moments(dist, query.t)
        t, n = query.t, query.n
        if query.which.uses_pair_count:
            c = float(pair_count(n))
            return max(c * t_moment ** 2, scalar_abs_power(c, t / 2.0) * scalar_abs_power(second, t))
        return max(n * n * t_moment ** 2, scalar_abs_power(n, t) * scalar_abs_power(second, t))

    def iid_moment(self, query: ConstantQuery, dist: SymmetricAtomDist) -> float:
        """E|form|^t for n i.i.d. copies of ``dist`` (and an independent copy for the Y list)."""
        dists = (dist,) * query.n
        kind = query.which.form_kind
        y_dists = dists if kind is FormKind.DECOUPLED else ()
        return self.engine.three_point_chaos(FormSpec(kind, dists, query.t, y_dists))

    def ratio(self, query: ConstantQuery, dist: SymmetricAtomDist) -> float:
        """E|form|^t / normaliser for i.i.d. coordinates with law ``dist``."""
        norm = self.normalizer(query, dist)
        if norm == 0.0:
            return 0.0
        return self.iid_moment(query, dist) / norm

    # Routes

    def derived_value(self, query: ConstantQuery, scale: float = 1.0) -> float:
        """
        Extremal sup bound at the corner profile, divided by the normaliser value.

        Args:
            query: Constant query
            scale: Normaliser value D of the corner profile

        Returns:
            The derived best constant
        """
        profile = self.corner_profile(query, scale)
        profiles = [profile] * query.n
        if query.which.form_kind is FormKind.ORDINARY:
            report = self.bounds.sup_ordinary(profiles, query.t)
        else:
            report = self.bounds.sup_decoupled(profiles, profiles, query.t)
        return report.value / scale

    def literal_value(self, query: ConstantQuery) -> float:
        """
        The closed formula for the constant, term for term as printed.

        Args:
            query: Constant query

        Returns:
            The literal best constant
        """
        t, n = query.t, query.n
        if t >= 4.0:
            profile = self.corner_profile(query)
            return self.bounds.extremal_chaos(query.which.form_kind, [profile] * n, t,
                                              [profile] * n if query.which.form_kind is FormKind.DECOUPLED else ())

        c = float(pair_count(n))
        sum_moment = self.engine.rademacher_sum_moment(n - 1, t)
        if query.which.form_kind is FormKind.ORDINARY:
            chaos = self.engine.rademacher_chaos_ordinary(n, t)
            factor = 1.0
        else:
            chaos = self.engine.rademacher_chaos_decoupled(n, t)
            factor = 2.0

        if query.which.uses_pair_count:
            diff = c ** -0.5 - c ** (-t / 2.0)
            product_term = factor * c * diff ** 2
            cross_term = factor * diff * n * c ** (-t / 4.0) * sum_moment
            chaos_term = c ** (-t / 2.0) * chaos
        else:
            n = float(n)
            product_term = factor * c * (1.0 / n - n ** -t) ** 2
            cross_term = factor * (n ** (-t / 2.0) - n ** (1.0 - 1.5 * t)) * sum_moment
            chaos_term = n ** -t * chaos
        return product_term + cross_term + chaos_term

    def best_constant(self, query: ConstantQuery) -> ConstantReport:
        """
        Both routes for one best constant.

        Args:
            query: Constant query

        Returns:
            Constant report with the relative gap |literal - derived| / derived
        """
        derived = self.derived_value(query)
        literal = self.literal_value(query)
        gap = relative_gap(literal, derived)
        if gap > GAP_REPORT_RTOL:
            logger.warning(
                f"{query.which.value}(t={query.t:g}, n={query.n}): literal formula "
                f"{literal:.12g} differs from derived value {derived:.12g} (gap {gap:.3g})"
            )
        return ConstantReport(query, literal, derived, gap, query.regime)

    def constant_table(self, which_list: Iterable, t_list: Iterable[float],
                       n_list: Iterable[int]) -> List[ConstantReport]:
        """
        Best constants over the Cartesian product of queries.

        Args:
            which_list: Constant names or kinds
            t_list: Exponents
            n_list: Dimensions

        Returns:
            Reports sorted by (which, t, n)
        """
        which_list, t_list, n_list = list(which_list), list(t_list), list(n_list)
        require(which_list and t_list and n_list, "Constant table needs non-empty query lists")
        queries = {ConstantQuery(w, t, n) for w, t, n in product(which_list, t_list, n_list)}
        ordered = sorted(queries, key=lambda q: q.sort_key)
        logger.info(f"Computing {len(ordered)} best constants")
        return [self.best_constant(q) for q in ordered]

    # Checks

    def scale_invariance_check(self, query: ConstantQuery, scale: float) -> float:
        """
        Relative difference between the derived constant at normaliser D and at 1.

        Args:
            query: Constant query
            scale: Normaliser value D

        Returns:
            |derived(D) - derived(1)| / derived(1)
        """
        return relative_gap(self.derived_value(query, scale), self.derived_value(query))

    def witness_law(self, query: ConstantQuery, m: int = WITNESS_M) -> SymmetricAtomDist:
        """
        Law whose i.i.d. copies nearly attain the constant.

        Args:
            query: Constant query
            m: Index of the approximating law (2 < t < 4 only)

        Returns:
            The extremal law at the corner for t >= 4, the approximating law X_m otherwise
        """
        profile = self.corner_profile(query)
        if query.t >= 4.0 or profile.is_degenerate:
            return extremal_law(profile)
        dist, _ = make_approx(profile.a, profile.b, profile.t, m)
        return dist

    def witness_ratio(self, query: ConstantQuery, m: int = WITNESS_M) -> float:
        """
        E|form|^t / normaliser for n i.i.d. witness laws.

        Args:
            query: Constant query
            m: Index of the approximating law

        Returns:
            The witnessed fraction of the constant's numerator; tends to the
            derived value from below
        """
        return self.ratio(query, self.witness_law(query, m))
