"""
Named verification suites: the default sweeps behind ``rbf.py verify``.
"""

import logging
from itertools import product
from typing import Callable, Dict, List, Optional

from config.settings import DEFAULT_SEED
from distributions.symmetric_dist import ClassKind, MomentProfile
from moments.moment_engine import FormKind
from .convergence_checks import ConvergenceVerifier
from .coordinate_checks import WEIGHT_CHOICES, CoordinateStepVerifier
from .extremality_checks import ExtremalityVerifier
from .lemma_checks import LemmaVerifier
from .report import VerifyReport
from .rosenthal_checks import RosenthalVerifier

logger = logging.getLogger(__name__)

# Heterogeneous per-coordinate profiles: a_i and b_i / a_i^t
SWEEP_A = (1.0, 0.8, 1.25)
SWEEP_RATIO = (2.0, 1.5, 3.0)

EXTREMALITY_T = (2.5, 3.0, 3.5, 4.0, 5.0)
EXTREMALITY_N = (2, 3, 4)
CONVERGENCE_T = (2.5, 3.0, 3.5)
CONVERGENCE_N = (2, 3)
ROSENTHAL_WHICH = ("B4", "B5", "B6", "B7")
ROSENTHAL_T = (2.5, 3.0, 4.0, 5.0)
ROSENTHAL_N = (2, 3, 4)
COORDINATE_T = (2.5, 3.5, 4.0, 5.0)

def sweep_profiles(t: float, n: int, class_kind: ClassKind, offset: int = 0) -> List[MomentProfile]:
    """n profiles cycling through the sweep table, starting at ``offset``."""
    profiles = []
    for i in range(n):
        a = SWEEP_A[(i + offset) % len(SWEEP_A)]
        ratio = SWEEP_RATIO[(i + offset) % len(SWEEP_RATIO)]
        profiles.append(MomentProfile(a, a ** t * ratio, t, class_kind))
    return profiles

class SuiteRunner:
    """Runs a named suite with a seed and an optional trial-count override."""

    def __init__(self):
        self.lemmas = LemmaVerifier()
        self.extremality = ExtremalityVerifier()
        self.convergence = ConvergenceVerifier(self.extremality.bounds)
        self.rosenthal = RosenthalVerifier()
        self.coordinate = CoordinateStepVerifier(self.extremality.engine)
        self._suites: Dict[str, Callable[[int, Optional[int]], VerifyReport]] = {
            'lemma1': lambda seed, trials: self._lemma(1, seed, trials),
            'lemma2': lambda seed, trials: self._lemma(2, seed, trials),
            'lemma3': lambda seed, trials: self._lemma(3, seed, trials),
            'lemma4': lambda seed, trials: self._lemma(4, seed, trials),
            'extremality': self._extremality,
            'convergence': self._convergence,
            'rosenthal': self._rosenthal,
            'coordinate': self._coordinate,
        }
        logger.info(f"Initialized suite runner with {len(self._suites)} suites")

    @property
    def suites(self) -> List[str]:
        return list(self._suites)

    def run(self, suite: str, seed: int = DEFAULT_SEED, trials: Optional[int] = None) -> VerifyReport:
        """
        Run one suite.

        Args:
            suite: Suite name (see ``suites``)
            seed: Run seed
            trials: Per-configuration trial count; each suite's default when None

        Returns:
            Combined verification report
        """
        if suite not in self._suites:
            raise ValueError(f"Unknown suite {suite!r}; expected one of {', '.join(self._suites)}")
        if trials is not None and trials < 1:
            raise ValueError(f"trials must be positive, got {trials}")
        logger.info(f"Running suite {suite} (seed={seed}, trials={trials or 'default'})")
        report = self._suites[suite](seed, trials)
        logger.info(f"Suite {suite}: {report.trials} checks, {report.violations} violations")
        return report

    @staticmethod
    def _kwargs(trials: Optional[int]) -> dict:
        return {} if trials is None else {'trials': trials}

    def _lemma(self, lemma_id: int, seed: int, trials: Optional[int]) -> VerifyReport:
        if trials is None:
            return self.lemmas.check_lemma(lemma_id, seed=seed)
        return self.lemmas.check_lemma(lemma_id, trials_per_point=trials, seed=seed)

    def _extremality(self, seed: int, trials: Optional[int]) -> VerifyReport:
        parts = []
        for kind, n, t in product(FormKind, EXTREMALITY_N, EXTREMALITY_T):
            y_offset = 1 if kind is FormKind.DECOUPLED else None
            cases = [("sup", ClassKind.M1), ("sup", ClassKind.M2)]
            if t >= 3.0:
                cases.append(("inf", ClassKind.M1))
            for side, class_kind in cases:
                profiles = sweep_profiles(t, n, class_kind)
                y_profiles = sweep_profiles(t, n, class_kind, y_offset) if y_offset is not None else None
                # decoupled forms enumerate both lists; n=4 means 5^8 outcomes per trial at 2 magnitudes
                cap = 2 if kind is FormKind.DECOUPLED and n > 2 else None
                parts.append(self.extremality.check_extremality(
                    kind, side, profiles, t, seed=seed, y_profiles=y_profiles,
                    max_magnitudes=cap, **self._kwargs(trials)))
        return VerifyReport.combine("extremality", seed, parts)

    def _convergence(self, seed: int, trials: Optional[int]) -> VerifyReport:
        # deterministic; seed and trials do not apply
        parts = [self.convergence.check_convergence(1.0, 2.0, t, n)
                 for t, n in product(CONVERGENCE_T, CONVERGENCE_N)]
        return VerifyReport.combine("convergence", seed, parts)

    def _rosenthal(self, seed: int, trials: Optional[int]) -> VerifyReport:
        parts = [self.rosenthal.check_rosenthal(which, t, n, seed=seed, **self._kwargs(trials))
                 for which, t, n in product(ROSENTHAL_WHICH, ROSENTHAL_T, ROSENTHAL_N)]
        return VerifyReport.combine("rosenthal", seed, parts)

    def _coordinate(self, seed: int, trials: Optional[int]) -> VerifyReport:
        parts = [self.coordinate.check_coordinate_step(kind, t, seed=seed, weights=weights,
                                                       **self._kwargs(trials))
                 for kind, t, weights in product(FormKind, COORDINATE_T, WEIGHT_CHOICES)]
        return VerifyReport.combine("coordinate", seed, parts)

SUITES = ('lemma1', 'lemma2', 'lemma3', 'lemma4', 'extremality', 'convergence', 'rosenthal', 'coordinate')

def run_suite(suite: str, seed: int = DEFAULT_SEED, trials: Optional[int] = None) -> VerifyReport:
    """Run a suite with a fresh runner."""
    return SuiteRunner().run(suite, seed, trials)
