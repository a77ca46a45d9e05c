"""
Convergence of the approximating laws X_m to the 2 < t < 4 supremum.
"""

import logging
from typing import Optional, Sequence

from bounds.extremal_bounds import ExtremalBoundCalculator
from config.settings import CONVERGENCE_REL_THRESHOLD, CONVERGENCE_SCHEDULE, VIOLATION_RTOL
from distributions.symmetric_dist import ClassKind, MomentProfile, make_approx
from moments.moment_engine import FormKind, FormSpec
from utils.error_handler import UnsupportedRegimeError
from utils.numerics import relative_gap
from .report import VerifyReport

logger = logging.getLogger(__name__)

class ConvergenceVerifier:
    """Tracks the gap between n i.i.d. X_m laws and the supremum along an m schedule."""

    def __init__(self, bounds: Optional[ExtremalBoundCalculator] = None,
                 threshold: float = CONVERGENCE_REL_THRESHOLD,
                 rtol: float = VIOLATION_RTOL):
        """
        Initialize the convergence verifier.

        Args:
            bounds: Bound calculator
            threshold: Largest accepted relative gap at the end of the schedule
            rtol: Tolerance below which a gap counts as zero
        """
        self.bounds = bounds or ExtremalBoundCalculator()
        self.engine = self.bounds.engine
        self.threshold = threshold
        self.rtol = rtol
        logger.debug(f"Initialized convergence verifier (threshold={threshold})")

    def check_convergence(self, a: float, b: float, t: float, n: int,
                          m_schedule: Sequence[int] = CONVERGENCE_SCHEDULE,
                          form_kind: FormKind = FormKind.ORDINARY) -> VerifyReport:
        """
        Gap between the form moment of n i.i.d. X_m laws and the supremum, for each m.

        Three properties are checked and each failure counts as a violation:
        no gap is negative, the last gap does not exceed the first, and the
        last relative gap is within the threshold. The threshold is
        configuration; no rate is asserted.

        Args:
            a: Square root of the second moment
            b: t-th absolute moment
            t: Exponent, 2 < t < 4
            n: Number of coordinates
            m_schedule: Increasing sequence indices
            form_kind: Form kind (the Y list repeats the X law)

        Returns:
            Verification report with one detail row per m
        """
        if not 2.0 < t < 4.0:
            raise UnsupportedRegimeError(f"Convergence of X_m is only defined for 2<t<4, got t={t}")
        schedule = [int(m) for m in m_schedule]
        if not schedule or any(m2 <= m1 for m1, m2 in zip(schedule, schedule[1:])):
            raise ValueError(f"m_schedule must be a non-empty increasing sequence, got {schedule}")

        profile = MomentProfile(a, b, t, ClassKind.M1)
        profiles = [profile] * n
        decoupled = form_kind is FormKind.DECOUPLED
        if decoupled:
            bound = self.bounds.sup_decoupled(profiles, profiles, t).value
        else:
            bound = self.bounds.sup_ordinary(profiles, t).value

        report = VerifyReport(
            suite="convergence", seed=0, rtol=self.rtol,
            config={'a': a, 'b': b, 't': t, 'n': n, 'form': form_kind.value,
                    'm_schedule': schedule, 'bound': bound, 'threshold': self.threshold},
        )
        tolerance = self.rtol * bound

        gaps = []
        for m in schedule:
            dist, params = make_approx(a, b, t, m)
            dists = (dist,) * n
            achieved = self.engine.three_point_chaos(
                FormSpec(form_kind, dists, t, dists if decoupled else ()))
            gap = bound - achieved
            gaps.append(gap)
            report.record_upper(achieved, bound, m=m)
            report.details.append({
                'm': m, 'achieved': achieved, 'bound': bound, 'gap': gap,
                'relative_gap': relative_gap(achieved, bound), 'tail_moment': params.tail_moment(t),
            })
            logger.info(f"m={m}: achieved {achieved:.12g} of {bound:.12g} (gap {gap:.3e})")

        # final gap must not exceed the first; gaps within tolerance count as zero
        report.record_upper(gaps[-1], gaps[0] + tolerance, scale=bound, check="final<=first")
        final_relative = relative_gap(bound - gaps[-1], bound)
        report.record_upper(final_relative, self.threshold, scale=1.0, check="final relative gap")
        return report
