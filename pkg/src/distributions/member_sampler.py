"""
Seeded random members of the moment classes M1 and M2.
"""

import math
import logging
from typing import Optional, Sequence

import numpy as np

from config.settings import SAMPLER_MAX_ROUNDS, SOLVE_RTOL
from utils.error_handler import SamplingError
from .symmetric_dist import (
    ClassKind, MomentProfile, SymmetricAtomDist, make_rademacher, moments, point_mass
)

logger = logging.getLogger(__name__)

class ClassMemberSampler:
    """Draws reproducible random laws from M1(a, b) or M2(a, b) for verification sweeps."""

    def __init__(self, max_rounds: int = SAMPLER_MAX_ROUNDS, rtol: float = SOLVE_RTOL):
        """
        Initialize the sampler.

        Args:
            max_rounds: Rejection rounds before reporting a sampling failure
            rtol: Relative tolerance for the solved moment equalities
        """
        self.max_rounds = max_rounds
        self.rtol = rtol
        logger.debug(f"Initialized class member sampler (max_rounds={max_rounds})")

    def magnitude_window(self, profile: MomentProfile) -> tuple:
        """Log-uniform sampling window [a/4, 4 max(a, b^{1/t})]."""
        upper = 4.0 * max(profile.a, profile.b ** (1.0 / profile.t))
        lower = profile.a / 4.0 if profile.a > 0.0 else upper / 16.0
        return lower, upper

    def solve_equality_member(self, profile: MomentProfile, magnitudes: Sequence[float],
                              fixed_weights: Sequence[float] = ()) -> Optional[SymmetricAtomDist]:
        """
        Solve for pair probabilities that hit EX^2 = a^2 and E|X|^t = b exactly.

        The last two magnitudes are solved for; the leading ones carry the
        given total weights P(|X| = v). Whatever mass is left sits at zero.

        Args:
            profile: Target profile
            magnitudes: Distinct positive magnitudes, at least two
            fixed_weights: Total weights of the leading len(magnitudes) - 2 magnitudes

        Returns:
            The law, or None when the solution has a negative probability
        """
        mags = np.asarray(magnitudes, dtype=np.float64)
        if mags.size < 2 or len(fixed_weights) != mags.size - 2:
            raise ValueError("Need two solved magnitudes plus one weight per extra magnitude")

        t = profile.t
        fixed = np.asarray(fixed_weights, dtype=np.float64)
        free_mags = mags[:-2]
        rest_second = profile.a ** 2 - math.fsum((fixed * free_mags ** 2).tolist())
        rest_t = profile.b - math.fsum((fixed * free_mags ** t).tolist())

        solved = mags[-2:]
        system = np.array([solved ** 2, solved ** t])
        try:
            weights = np.linalg.solve(system, np.array([rest_second, rest_t]))
        except np.linalg.LinAlgError:
            return None

        all_weights = np.concatenate([fixed, weights])
        if np.any(all_weights <= 0.0):
            return None
        zero_mass = 1.0 - math.fsum(all_weights.tolist())
        if zero_mass < 0.0:
            return None

        dist = SymmetricAtomDist(zero_mass, tuple(zip(mags.tolist(), (0.5 * all_weights).tolist())))
        if not profile.with_kind(ClassKind.M1).admits(dist, self.rtol):
            return None
        return dist

    def sample_member(self, profile: MomentProfile, magnitudes: int = 2,
                      seed: int = 0) -> SymmetricAtomDist:
        """
        Random member of the profile's class, deterministic given the seed.

        Args:
            profile: Profile with class kind M1 or M2
            magnitudes: Number of distinct atom magnitudes to draw
            seed: Random seed

        Returns:
            A law in M1(a, b) or M2(a, b)

        Raises:
            SamplingError: If no feasible atom set was found within max_rounds
        """
        rng = np.random.default_rng(seed)
        if profile.class_kind is ClassKind.M1:
            return self._sample_equality(profile, magnitudes, rng)
        return self._sample_domination(profile, magnitudes, rng)

    def _draw_magnitudes(self, profile: MomentProfile, count: int,
                         rng: np.random.Generator) -> Optional[np.ndarray]:
        lower, upper = self.magnitude_window(profile)
        mags = np.exp(rng.uniform(math.log(lower), math.log(upper), size=count))
        if np.unique(mags).size != count:
            return None
        return mags

    def _sample_equality(self, profile: MomentProfile, count: int,
                         rng: np.random.Generator) -> SymmetricAtomDist:
        if profile.a == 0.0:
            return point_mass()
        if profile.is_degenerate:
            # Jensen equality: M1 holds only a * Rademacher
            return make_rademacher(profile.a)
        if count < 2:
            raise ValueError("M1 sampling needs at least two magnitudes")

        a2 = profile.a ** 2
        for round_index in range(self.max_rounds):
            mags = self._draw_magnitudes(profile, count, rng)
            if mags is None:
                continue
            # solve for the extreme magnitudes, draw weights for the middle ones
            order = np.argsort(mags)
            ordered = mags[order]
            solved = np.array([ordered[0], ordered[-1]])
            middle = ordered[1:-1]
            fixed = np.zeros(0)
            if middle.size:
                shares = rng.dirichlet(np.ones(middle.size))
                budget = rng.uniform(0.0, 1.0)
                fixed = shares * budget * a2 / middle ** 2
            dist = self.solve_equality_member(profile, np.concatenate([middle, solved]), fixed)
            if dist is not None:
                logger.debug(f"M1 member found after {round_index + 1} rounds")
                return dist

        raise SamplingError(
            f"No feasible M1 law for a={profile.a:.6g}, b={profile.b:.6g}, t={profile.t:.6g} "
            f"after {self.max_rounds} rounds"
        )

    def _sample_domination(self, profile: MomentProfile, count: int,
                           rng: np.random.Generator) -> SymmetricAtomDist:
        if profile.a == 0.0 or profile.b == 0.0:
            return point_mass()

        if count >= 2 and rng.uniform() < 0.25:
            # equality members belong to M2 as well
            try:
                return self._sample_equality(profile.with_kind(ClassKind.M1), count,
                                             np.random.default_rng(rng.integers(2**63)))
            except SamplingError:
                logger.debug("Equality draw failed inside M2 sampling; using scaled draw")

        mags = None
        for _ in range(self.max_rounds):
            mags = self._draw_magnitudes(profile, max(count, 1), rng)
            if mags is not None:
                break
        if mags is None:
            raise SamplingError(
                f"No distinct magnitudes for a={profile.a:.6g}, b={profile.b:.6g}, t={profile.t:.6g} "
                f"after {self.max_rounds} rounds"
            )
        cells = rng.dirichlet(np.ones(mags.size + 1))
        weights = cells[:-1]
        raw = SymmetricAtomDist(float(cells[-1]) if cells[-1] > 0.0 else 0.0,
                                tuple(zip(mags.tolist(), (0.5 * weights).tolist())))
        second, t_moment = moments(raw, profile.t)
        limit = min(profile.a / math.sqrt(second), (profile.b / t_moment) ** (1.0 / profile.t))
        shrink = 1.0 if rng.uniform() < 0.5 else rng.uniform(0.5, 1.0)
        # pull just inside the boundary to absorb rounding in the scaled moments
        return raw.scaled(limit * shrink * (1.0 - 1e-13))

def sample_member(profile: MomentProfile, magnitudes: int = 2, seed: int = 0) -> SymmetricAtomDist:
    """Module-level shortcut for ClassMemberSampler().sample_member."""
    return ClassMemberSampler().sample_member(profile, magnitudes, seed)
