"""
Sandwich checks: sampled class members against the extremal bounds.
"""

import logging
from typing import List, Optional, Sequence

from bounds.extremal_bounds import ExtremalBoundCalculator, BoundReport, extremal_law
from config.settings import DEFAULT_EXTREMALITY_TRIALS, DEFAULT_SEED, VIOLATION_RTOL, WITNESS_M
from distributions.symmetric_dist import ClassKind, MomentProfile, SymmetricAtomDist, make_approx
from moments.moment_engine import FormKind, FormSpec
from .law_generator import BoundaryBiasedGenerator, trial_seed
from .report import VerifyReport

logger = logging.getLogger(__name__)

Y_LIST_KEY = 1

def approx_law(profile: MomentProfile, m: int) -> SymmetricAtomDist:
    """Approximating law X_m for a profile; the extremal law covers a = 0 and a^t = b."""
    if profile.a == 0.0 or profile.is_degenerate:
        return extremal_law(profile)
    dist, _ = make_approx(profile.a, profile.b, profile.t, m)
    return dist

class ExtremalityVerifier:
    """Checks that sampled members never beat the sup bound nor undercut the inf bound."""

    def __init__(self, bounds: Optional[ExtremalBoundCalculator] = None,
                 generator: Optional[BoundaryBiasedGenerator] = None,
                 rtol: float = VIOLATION_RTOL):
        """
        Initialize the extremality verifier.

        Args:
            bounds: Bound calculator (its engine evaluates the sampled moments)
            generator: Source of random class members
            rtol: Relative violation tolerance
        """
        self.bounds = bounds or ExtremalBoundCalculator()
        self.engine = self.bounds.engine
        self.generator = generator or BoundaryBiasedGenerator()
        self.rtol = rtol
        logger.debug("Initialized extremality verifier")

    def _moment(self, kind: FormKind, x_dists: Sequence[SymmetricAtomDist], t: float,
                y_dists: Sequence[SymmetricAtomDist]) -> float:
        return self.engine.three_point_chaos(FormSpec(kind, tuple(x_dists), t, tuple(y_dists)))

    def _witness_laws(self, side: str, t: float, profiles: Sequence[MomentProfile],
                      witness_m: int) -> List[SymmetricAtomDist]:
        # the additive regimes are approached by X_m, the others attained by U(a, b, t)
        additive = (side == "sup" and t < 4.0) or (side == "inf" and t >= 4.0)
        if additive:
            return [approx_law(p, witness_m) for p in profiles]
        return [extremal_law(p) for p in profiles]

    def check_extremality(self, form_kind: FormKind, side: str,
                          profiles: Sequence[MomentProfile], t: float,
                          trials: int = DEFAULT_EXTREMALITY_TRIALS, seed: int = DEFAULT_SEED,
                          y_profiles: Optional[Sequence[MomentProfile]] = None,
                          witness_m: int = WITNESS_M,
                          max_magnitudes: Optional[int] = None) -> VerifyReport:
        """
        Sample members of the class and compare their exact form moments with the bound.

        Args:
            form_kind: Ordinary or decoupled form
            side: "sup" or "inf"
            profiles: X-list profiles (their class kind selects M1 or M2)
            t: Exponent
            trials: Number of sampled coordinate configurations
            seed: Run seed
            y_profiles: Y-list profiles (decoupled only; defaults to the X profiles)
            witness_m: Index of the approximating witness laws
            max_magnitudes: Cap on atom magnitudes per sampled law

        Returns:
            Verification report with one near-witness entry
        """
        form_kind = FormKind(form_kind) if isinstance(form_kind, str) else form_kind
        if form_kind is FormKind.DECOUPLED and y_profiles is None:
            y_profiles = profiles
        y_profiles = list(y_profiles or ())

        bound: BoundReport = self.bounds.bound(form_kind, side, profiles, t,
                                               y_profiles if form_kind is FormKind.DECOUPLED else None)
        report = VerifyReport(
            suite="extremality", seed=seed, rtol=self.rtol,
            config={
                'form': form_kind.value, 'side': side, 't': t, 'n': len(profiles),
                'class': profiles[0].class_kind.value, 'regime': bound.regime.value,
                'a': [p.a for p in profiles], 'b': [p.b for p in profiles],
                'c': [p.a for p in y_profiles], 'd': [p.b for p in y_profiles],
                'bound': bound.value,
            },
        )
        check = report.record_upper if side == "sup" else report.record_lower
        logger.info(f"Extremality: {form_kind.value} {side} t={t} n={len(profiles)} ({trials} trials)")

        for trial in range(trials):
            x_dists = [self.generator.draw(p, trial_seed(seed, trial, 0, i), max_magnitudes)
                       for i, p in enumerate(profiles)]
            y_dists = [self.generator.draw(p, trial_seed(seed, trial, Y_LIST_KEY, i), max_magnitudes)
                       for i, p in enumerate(y_profiles)]
            moment = self._moment(form_kind, x_dists, t, y_dists)
            check(moment, bound.value, trial=trial)

        x_witness = self._witness_laws(side, t, profiles, witness_m)
        y_witness = self._witness_laws(side, t, y_profiles, witness_m)
        achieved = self._moment(form_kind, x_witness, t, y_witness)
        check(achieved, bound.value, witness=True)
        label = f"X_m m={witness_m}" if (side == "sup") == (t < 4.0) else "U(a,b,t)"
        fraction = report.record_witness(label, achieved, bound.value)
        logger.info(f"Witness {label} reaches {fraction:.6f} of the {side} bound")
        return report

def uniform_profiles(a: float, b: float, t: float, n: int,
                     class_kind: ClassKind = ClassKind.M1) -> List[MomentProfile]:
    """n copies of the profile (a, b) at exponent t."""
    return [MomentProfile(a, b, t, class_kind)] * n
