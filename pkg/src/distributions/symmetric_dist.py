"""
Finite-support symmetric distributions and the moment profiles that constrain them.

A ``SymmetricAtomDist`` is a mass at zero plus pairs of atoms at +v and -v with
equal probabilities, so every odd moment vanishes by construction. The three
constructors build the laws the bounds are attained or approached by: the
three-point extremal law U(a, b, t), the scaled Rademacher law and the
approximating sequence X_m used for the 2 < t < 4 supremum.
"""

import math
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from config.settings import CONSTRUCTION_RTOL
from utils.error_handler import InfeasibleProfileError, require
from utils.numerics import stable_sum, scalar_abs_power, close

logger = logging.getLogger(__name__)

PROBABILITY_TOL = 1e-12

class ClassKind(Enum):
    """Moment class: prescribed moments (M1) or dominated moments (M2)."""
    M1 = "M1"
    M2 = "M2"

@dataclass(frozen=True)
class SymmetricAtomDist:
    """
    Symmetric law with P(X = 0) = zero_mass and P(X = +v) = P(X = -v) = half_prob.

    ``atoms`` holds (magnitude, half_prob) pairs; it is stored sorted by magnitude.
    """
    zero_mass: float
    atoms: Tuple[Tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        atoms = tuple(sorted((float(v), float(p)) for v, p in self.atoms))
        object.__setattr__(self, 'atoms', atoms)
        object.__setattr__(self, 'zero_mass', float(self.zero_mass))

        if not (-PROBABILITY_TOL <= self.zero_mass <= 1.0 + PROBABILITY_TOL):
            raise ValueError(f"zero_mass {self.zero_mass} is not a probability")
        magnitudes = [v for v, _ in atoms]
        if any(v <= 0.0 or not math.isfinite(v) for v in magnitudes):
            raise ValueError("Atom magnitudes must be finite and strictly positive")
        if len(set(magnitudes)) != len(magnitudes):
            raise ValueError("Atom magnitudes must be pairwise distinct")
        if any(p <= 0.0 for _, p in atoms):
            raise ValueError("Atom half probabilities must be strictly positive")

        total = self.zero_mass + 2.0 * math.fsum(p for _, p in atoms)
        if abs(total - 1.0) > PROBABILITY_TOL:
            raise ValueError(f"Probabilities sum to {total!r}, expected 1")

    @property
    def magnitudes(self) -> Tuple[float, ...]:
        return tuple(v for v, _ in self.atoms)

    @property
    def is_point_mass(self) -> bool:
        return not self.atoms

    @property
    def support_size(self) -> int:
        """Number of distinct support points."""
        return 2 * len(self.atoms) + (1 if self.zero_mass > 0.0 or not self.atoms else 0)

    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Support points and their probabilities in a fixed order.

        Zero comes first (when it carries mass), then -v, +v for each atom by
        increasing magnitude.

        Returns:
            (values, probabilities) as float64 arrays
        """
        values = []
        probs = []
        if self.zero_mass > 0.0 or not self.atoms:
            values.append(0.0)
            probs.append(self.zero_mass if self.atoms else 1.0)
        for v, p in self.atoms:
            values.extend((-v, v))
            probs.extend((p, p))
        return np.array(values, dtype=np.float64), np.array(probs, dtype=np.float64)

    def activity(self) -> float:
        """P(X != 0)."""
        return 2.0 * math.fsum(p for _, p in self.atoms)

    def scaled(self, factor: float) -> 'SymmetricAtomDist':
        """
        Law of factor * X.

        Args:
            factor: Nonnegative scale

        Returns:
            Scaled distribution (point mass at 0 when factor is 0)
        """
        if factor < 0.0:
            raise ValueError("Scale factor must be nonnegative")
        if factor == 0.0:
            return point_mass()
        return SymmetricAtomDist(self.zero_mass, tuple((factor * v, p) for v, p in self.atoms))

    def absolute_moment(self, t: float) -> float:
        """E|X|^t with |0|^t = 0."""
        return stable_sum([2.0 * p * scalar_abs_power(v, t) for v, p in self.atoms])

@dataclass(frozen=True)
class MomentProfile:
    """
    Constraint pair on a symmetric law: EX^2 against a^2 and E|X|^t against b.

    For class M1 both are equalities, for M2 both are upper bounds.
    """
    a: float
    b: float
    t: float
    class_kind: ClassKind = ClassKind.M1

    def __post_init__(self):
        object.__setattr__(self, 'a', float(self.a))
        object.__setattr__(self, 'b', float(self.b))
        object.__setattr__(self, 't', float(self.t))
        if isinstance(self.class_kind, str):
            object.__setattr__(self, 'class_kind', ClassKind(self.class_kind))

        require(self.t > 2.0, f"Exponent t must exceed 2, got {self.t}")
        require(self.a >= 0.0 and self.b >= 0.0,
                f"Profile values must be nonnegative, got a={self.a}, b={self.b}")
        require(self.a_power_t <= self.b * (1.0 + CONSTRUCTION_RTOL),
                f"Infeasible profile: a^t = {self.a_power_t:.12g} exceeds b = {self.b:.12g}")
        if self.class_kind is ClassKind.M1:
            require(not (self.a == 0.0 and self.b > 0.0),
                    "Infeasible profile: EX^2 = 0 forces X = 0, so b must be 0 under M1")

    @property
    def a_power_t(self) -> float:
        return scalar_abs_power(self.a, self.t)

    @property
    def excess(self) -> float:
        """
        b - a^t, clipped at zero; the heavy-tail budget of the profile.

        Zero when a = 0: EX^2 = 0 forces X = 0 in either class.
        """
        if self.a == 0.0:
            return 0.0
        return max(self.b - self.a_power_t, 0.0)

    @property
    def is_degenerate(self) -> bool:
        """True when a^t = b, so M1 holds the single law a * Rademacher."""
        return self.b - self.a_power_t <= CONSTRUCTION_RTOL * self.b

    def with_kind(self, class_kind: ClassKind) -> 'MomentProfile':
        return MomentProfile(self.a, self.b, self.t, class_kind)

    def scaled(self, factor: float) -> 'MomentProfile':
        """Profile (factor * a, factor^t * b) of the scaled class."""
        return MomentProfile(factor * self.a, scalar_abs_power(factor, self.t) * self.b,
                             self.t, self.class_kind)

    def admits(self, dist: SymmetricAtomDist, rtol: float = 1e-10) -> bool:
        """
        Class membership test for a finite law.

        Args:
            dist: Candidate law
            rtol: Relative tolerance on both moment constraints

        Returns:
            True if the law belongs to the class
        """
        second, t_moment = moments(dist, self.t)
        a2 = self.a * self.a
        if self.class_kind is ClassKind.M1:
            return close(second, a2, rtol) and close(t_moment, self.b, rtol)
        return second <= a2 * (1.0 + rtol) and t_moment <= self.b * (1.0 + rtol)

@dataclass(frozen=True)
class ApproxParams:
    """Parameters of one member X_m of the approximating sequence."""
    m: int
    delta_m: float
    b_mk: float
    delta_star: float

    def tail_moment(self, t: float) -> float:
        """b_mk^t * delta_star; tends to b - a^t as m grows."""
        return scalar_abs_power(self.b_mk, t) * self.delta_star

def point_mass() -> SymmetricAtomDist:
    """The law concentrated at 0."""
    return SymmetricAtomDist(1.0, ())

def make_rademacher(scale: float) -> SymmetricAtomDist:
    """
    Scaled Rademacher law P(X = +scale) = P(X = -scale) = 1/2.

    Args:
        scale: Nonnegative magnitude

    Returns:
        The scaled Rademacher law, or the point mass at 0 when scale is 0
    """
    if scale < 0.0:
        raise ValueError(f"Rademacher scale must be nonnegative, got {scale}")
    if scale == 0.0:
        return point_mass()
    return SymmetricAtomDist(0.0, ((float(scale), 0.5),))

def make_extremal(a: float, b: float, t: float) -> SymmetricAtomDist:
    """
    Three-point extremal law U(a, b, t).

    P(U = 0) = 1 - (a^t/b)^{2/(t-2)} and P(U = +-(b/a^2)^{1/(t-2)}) = (1/2)(a^t/b)^{2/(t-2)},
    which gives EU^2 = a^2 and E|U|^t = b.

    Args:
        a: Square root of the second moment
        b: t-th absolute moment
        t: Exponent, t > 2

    Returns:
        The extremal law; a * Rademacher when a^t = b, the point mass when a = b = 0

    Raises:
        InfeasibleProfileError: If a^t > b or a = 0 < b
    """
    profile = MomentProfile(a, b, t, ClassKind.M1)
    if profile.a == 0.0:
        return point_mass()
    if profile.is_degenerate:
        return make_rademacher(profile.a)

    exponent = 1.0 / (t - 2.0)
    log_p = 2.0 * exponent * (t * math.log(profile.a) - math.log(profile.b))
    p = math.exp(log_p)
    magnitude = math.exp(exponent * (math.log(profile.b) - 2.0 * math.log(profile.a)))
    return SymmetricAtomDist(-math.expm1(log_p), ((magnitude, 0.5 * p),))

def make_approx(a: float, b: float, t: float, m: int) -> Tuple[SymmetricAtomDist, ApproxParams]:
    """
    Member X_m of the approximating sequence for the 2 < t < 4 supremum.

    With delta_m = 1/m and b_m = ((b - a^t(1 - delta_m)) / (a^2 delta_m))^{1/(t-2)}:
    P(X = +-a) = (1 - delta_m)/2 each, P(X = +-b_m) = delta_star/2 each with
    delta_star = a^2 delta_m / b_m^2, and P(X = 0) = delta_m - delta_star.
    Every member has EX^2 = a^2 and E|X|^t = b exactly.

    Args:
        a: Square root of the second moment
        b: t-th absolute moment
        t: Exponent, t > 2
        m: Sequence index, m >= 1

    Returns:
        (law, parameters); the law is a * Rademacher when a^t = b
    """
    if int(m) != m or m < 1:
        raise ValueError(f"Sequence index m must be a positive integer, got {m}")
    m = int(m)
    profile = MomentProfile(a, b, t, ClassKind.M1)
    delta_m = 1.0 / m

    if profile.is_degenerate:
        return make_rademacher(profile.a), ApproxParams(m, delta_m, profile.a, 0.0)

    a2 = profile.a * profile.a
    numerator = profile.b - profile.a_power_t * (1.0 - delta_m)
    b_mk = (numerator / (a2 * delta_m)) ** (1.0 / (t - 2.0))
    delta_star = a2 * delta_m / (b_mk * b_mk)

    atoms = [(b_mk, 0.5 * delta_star)]
    if delta_m < 1.0:
        atoms.append((profile.a, 0.5 * (1.0 - delta_m)))
    zero_mass = delta_m - delta_star
    if -PROBABILITY_TOL <= zero_mass < 0.0:
        # b_mk >= a keeps delta_star <= delta_m; only rounding goes below 0
        zero_mass = 0.0
    dist = SymmetricAtomDist(zero_mass, tuple(atoms))
    logger.debug(f"Approximating law m={m}: b_mk={b_mk:.6g}, delta_star={delta_star:.6g}")
    return dist, ApproxParams(m, delta_m, b_mk, delta_star)

def moments(dist: SymmetricAtomDist, t: float) -> Tuple[float, float]:
    """
    Second and t-th absolute moments of a finite symmetric law.

    Args:
        dist: The law
        t: Positive exponent

    Returns:
        (EX^2, E|X|^t)
    """
    second = stable_sum([2.0 * p * v * v for v, p in dist.atoms])
    return second, dist.absolute_moment(t)

def uniform_magnitude(dists: Sequence[SymmetricAtomDist]) -> Optional[float]:
    """
    Shared atom magnitude of a list of at-most-three-point laws.

    Args:
        dists: Laws to inspect

    Returns:
        The common magnitude (0.0 if every law is the point mass), or None
        when some law has several atom pairs or the magnitudes differ
    """
    common = 0.0
    for dist in dists:
        if dist.is_point_mass:
            continue
        if len(dist.atoms) != 1:
            return None
        v = dist.atoms[0][0]
        if common == 0.0:
            common = v
        elif v != common:
            return None
    return common
