"""
Random symmetric laws for verification sweeps, biased toward class boundaries.
"""

import math
import logging
from typing import Optional

import numpy as np

from config.settings import (
    BOUNDARY_PROBABILITY, SAMPLER_DEFAULT_MAGNITUDES, SEED_RETRIES
)
from distributions.member_sampler import ClassMemberSampler
from distributions.symmetric_dist import (
    ClassKind, MomentProfile, SymmetricAtomDist, make_approx, make_extremal,
    make_rademacher, point_mass
)
from utils.error_handler import SamplingError, retry_with_fresh_seed

logger = logging.getLogger(__name__)

NEAR_DEGENERATE_RATIO = 1e-3
BOUNDARY_APPROX_INDICES = (1, 10, 1000)

def trial_seed(seed: int, *keys: int) -> int:
    """
    Sub-seed for one trial, derived from the run seed and trial coordinates.

    Args:
        seed: Run seed (nonnegative)
        *keys: Trial index and any further nonnegative integer coordinates

    Returns:
        A 63-bit seed; serial and parallel runs derive the same value
    """
    state = np.random.SeedSequence([int(seed), *(int(k) for k in keys)]).generate_state(1, dtype=np.uint64)
    return int(state[0] % (2**63))

def random_profile(t: float, rng: np.random.Generator,
                   class_kind: ClassKind = ClassKind.M1,
                   degenerate_probability: float = 0.1) -> MomentProfile:
    """
    Random feasible profile (a, b) at exponent t.

    a is log-uniform on [1/2, 2]; b = a^t (1 + r) with r log-uniform on
    [1/20, 20], or r = 0 with probability ``degenerate_probability``.
    """
    a = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
    if rng.uniform() < degenerate_probability:
        ratio = 1.0
    else:
        ratio = 1.0 + math.exp(rng.uniform(math.log(0.05), math.log(20.0)))
    return MomentProfile(a, a ** t * ratio, t, class_kind)

class BoundaryBiasedGenerator:
    """Draws class members, choosing a boundary law with fixed probability."""

    def __init__(self, sampler: Optional[ClassMemberSampler] = None,
                 boundary_probability: float = BOUNDARY_PROBABILITY,
                 max_magnitudes: int = SAMPLER_DEFAULT_MAGNITUDES + 1):
        """
        Initialize the generator.

        Args:
            sampler: Class-member sampler for the generic draws
            boundary_probability: Chance of returning a boundary law instead
            max_magnitudes: Largest number of atom magnitudes in a generic draw
        """
        self.sampler = sampler or ClassMemberSampler()
        self.boundary_probability = boundary_probability
        self.max_magnitudes = max(2, max_magnitudes)
        logger.debug(f"Initialized boundary-biased generator (p={boundary_probability})")

    @retry_with_fresh_seed(max_retries=SEED_RETRIES)
    def _sample(self, profile: MomentProfile, count: int, seed: int = 0) -> SymmetricAtomDist:
        return self.sampler.sample_member(profile, count, seed)

    def boundary_member(self, profile: MomentProfile, rng: np.random.Generator) -> SymmetricAtomDist:
        """
        A law on the boundary of the profile's class.

        Candidates are the three-point extremal law, approximating laws X_m
        for a few m, and (for M2 only) the scaled Rademacher law a U.
        """
        if profile.a == 0.0:
            return point_mass()
        if profile.is_degenerate:
            return make_rademacher(profile.a)

        choices = ['extremal', 'approx']
        if profile.class_kind is ClassKind.M2:
            choices.append('rademacher')
        choice = choices[int(rng.integers(len(choices)))]
        if choice == 'extremal':
            return make_extremal(profile.a, profile.b, profile.t)
        if choice == 'rademacher':
            return make_rademacher(profile.a)
        m = BOUNDARY_APPROX_INDICES[int(rng.integers(len(BOUNDARY_APPROX_INDICES)))]
        dist, _ = make_approx(profile.a, profile.b, profile.t, m)
        return dist

    def draw(self, profile: MomentProfile, seed: int,
             max_magnitudes: Optional[int] = None) -> SymmetricAtomDist:
        """
        One member of the profile's class, deterministic given the seed.

        Args:
            profile: Target profile and class
            seed: Trial sub-seed
            max_magnitudes: Override for the largest magnitude count

        Returns:
            A law in M1(a, b) or M2(a, b)
        """
        rng = np.random.default_rng(seed)
        near_boundary = profile.a > 0.0 and (
            profile.b <= profile.a_power_t * (1.0 + NEAR_DEGENERATE_RATIO))
        if near_boundary or rng.uniform() < self.boundary_probability:
            return self.boundary_member(profile, rng)

        upper = max(2, max_magnitudes or self.max_magnitudes)
        count = int(rng.integers(2, upper + 1))
        try:
            return self._sample(profile, count, seed=int(rng.integers(2**63)))
        except SamplingError as e:
            logger.warning(f"Falling back to a boundary law: {e}")
            return self.boundary_member(profile, rng)
