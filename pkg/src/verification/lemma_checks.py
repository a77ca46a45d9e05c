"""
One-dimensional comparison inequalities for E|z1 X + z2|^t.

    1. 2 < t < 4, z1 >= 0, EX^2 <= a^2, E|X|^t <= b:
       E|z1 X + z2|^t - b z1^t <= E|a z1 U + z2|^t - a^t z1^t
    2. 3 <= t < 4, EX^2 = a^2, E|X|^t = b:
       E|z1 X + z2|^t >= E|z1 U(a, b, t) + z2|^t
    3. t >= 4, EX^2 <= a^2, E|X|^t <= b:
       E|z1 X + z2|^t <= E|z1 U(a, b, t) + z2|^t
    4. t >= 4, z1 >= 0, EX^2 = a^2, E|X|^t = b:
       E|z1 X + z2|^t - b z1^t >= E|a z1 U + z2|^t - a^t z1^t

U is Rademacher and U(a, b, t) the three-point extremal law.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import DEFAULT_LEMMA_TRIALS, DEFAULT_SEED, VIOLATION_RTOL
from distributions.symmetric_dist import ClassKind, MomentProfile, SymmetricAtomDist, make_extremal
from utils.error_handler import UnsupportedRegimeError
from utils.numerics import expectation, scalar_abs_power
from .law_generator import BoundaryBiasedGenerator, trial_seed
from .report import VerifyReport

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class LemmaPoint:
    z1: float
    z2: float
    a: float
    b: float
    t: float

    def to_dict(self) -> Dict[str, float]:
        return {'z1': self.z1, 'z2': self.z2, 'a': self.a, 'b': self.b, 't': self.t}

@dataclass(frozen=True)
class LemmaRegime:
    description: str
    t_min: float
    t_max: float
    t_min_inclusive: bool
    class_kind: ClassKind
    z1_nonnegative: bool

    def admits(self, point: LemmaPoint) -> bool:
        lower_ok = point.t >= self.t_min if self.t_min_inclusive else point.t > self.t_min
        return lower_ok and point.t < self.t_max and (point.z1 >= 0.0 or not self.z1_nonnegative)

LEMMA_REGIMES = {
    1: LemmaRegime("2<t<4, z1>=0, dominated moments", 2.0, 4.0, False, ClassKind.M2, True),
    2: LemmaRegime("3<=t<4, prescribed moments", 3.0, 4.0, True, ClassKind.M1, False),
    3: LemmaRegime("t>=4, dominated moments", 4.0, float('inf'), True, ClassKind.M2, False),
    4: LemmaRegime("t>=4, z1>=0, prescribed moments", 4.0, float('inf'), True, ClassKind.M1, True),
}

def lemma_grid(z1_values: Sequence[float], z2_values: Sequence[float],
               ab_pairs: Sequence[Tuple[float, float]], t_values: Sequence[float]) -> List[LemmaPoint]:
    """Cartesian grid of (z1, z2, a, b, t) points."""
    return [LemmaPoint(z1, z2, a, b, t)
            for t, (a, b), z1, z2 in product(t_values, ab_pairs, z1_values, z2_values)]

DEFAULT_GRIDS = {
    1: lemma_grid((0.5, 1.0, 2.0), (0.0, 1.0, -1.0), ((1.0, 1.5), (1.0, 2.0)), (2.5, 3.0, 3.5)),
    2: lemma_grid((-1.0, 0.5, 2.0), (0.0, 1.0, -1.0), ((1.0, 1.5), (1.0, 2.0)), (3.0, 3.5)),
    3: lemma_grid((-1.0, 0.5, 2.0), (0.0, 1.0, -1.0), ((1.0, 1.5), (1.0, 2.0)), (4.0, 5.0)),
    4: lemma_grid((0.5, 1.0, 2.0), (0.0, 1.0, -1.0), ((1.0, 1.5), (1.0, 2.0)), (4.0, 5.0)),
}

def shifted_moment(dist: SymmetricAtomDist, z1: float, z2: float, t: float) -> float:
    """E|z1 X + z2|^t for a finite symmetric law."""
    values, probs = dist.support()
    return expectation(z1 * values + z2, probs, t)

def rademacher_shifted_moment(scale: float, z2: float, t: float) -> float:
    """E|scale U + z2|^t for Rademacher U."""
    return expectation(np.array([scale + z2, -scale + z2]), np.array([0.5, 0.5]), t)

class LemmaVerifier:
    """Checks the four comparison inequalities on sampled laws."""

    def __init__(self, generator: Optional[BoundaryBiasedGenerator] = None,
                 rtol: float = VIOLATION_RTOL):
        """
        Initialize the lemma verifier.

        Args:
            generator: Source of random class members
            rtol: Relative violation tolerance
        """
        self.generator = generator or BoundaryBiasedGenerator()
        self.rtol = rtol
        logger.debug("Initialized lemma verifier")

    def sides(self, lemma_id: int, point: LemmaPoint,
              dist: SymmetricAtomDist) -> Tuple[float, float, float]:
        """
        Both sides of a lemma at one point, oriented as smaller <= larger.

        Args:
            lemma_id: 1..4
            point: Grid point
            dist: Law of X

        Returns:
            (claimed smaller side, claimed larger side, margin scale)
        """
        z1, z2, a, b, t = point.z1, point.z2, point.a, point.b, point.t
        shifted = shifted_moment(dist, z1, z2, t)

        if lemma_id in (1, 4):
            rad = rademacher_shifted_moment(a * z1, z2, t)
            b_term = b * scalar_abs_power(z1, t)
            a_term = scalar_abs_power(a, t) * scalar_abs_power(z1, t)
            scale = max(shifted, rad) + b_term
            if lemma_id == 1:
                return shifted - b_term, rad - a_term, scale
            return rad - a_term, shifted - b_term, scale

        extremal = shifted_moment(make_extremal(a, b, t), z1, z2, t)
        scale = max(shifted, extremal)
        if lemma_id == 2:
            return extremal, shifted, scale
        return shifted, extremal, scale

    def check_lemma(self, lemma_id: int, grid: Optional[Sequence[LemmaPoint]] = None,
                    trials_per_point: int = DEFAULT_LEMMA_TRIALS,
                    seed: int = DEFAULT_SEED) -> VerifyReport:
        """
        Sample laws at every grid point and count violations.

        Args:
            lemma_id: 1..4
            grid: Points to check (defaults to the built-in grid for the lemma)
            trials_per_point: Sampled laws per point
            seed: Run seed

        Returns:
            Verification report

        Raises:
            UnsupportedRegimeError: If a grid point lies outside the lemma's regime
        """
        if lemma_id not in LEMMA_REGIMES:
            raise ValueError(f"Unknown lemma id {lemma_id}; expected 1..4")
        regime = LEMMA_REGIMES[lemma_id]
        points = list(grid) if grid is not None else DEFAULT_GRIDS[lemma_id]
        for point in points:
            if not regime.admits(point):
                raise UnsupportedRegimeError(
                    f"Point {point.to_dict()} is outside the regime of lemma {lemma_id} ({regime.description})")

        report = VerifyReport(
            suite=f"lemma{lemma_id}", seed=seed, rtol=self.rtol,
            config={'lemma': lemma_id, 'points': len(points), 'trials_per_point': trials_per_point},
        )
        logger.info(f"Checking lemma {lemma_id} on {len(points)} points x {trials_per_point} trials")

        for p_index, point in enumerate(points):
            profile = MomentProfile(point.a, point.b, point.t, regime.class_kind)
            for trial in range(trials_per_point):
                dist = self.generator.draw(profile, trial_seed(seed, lemma_id, p_index, trial))
                smaller, larger, scale = self.sides(lemma_id, point, dist)
                report.record_upper(smaller, larger, scale, lemma=lemma_id, point=point.to_dict(),
                                    trial=trial)
        return report
