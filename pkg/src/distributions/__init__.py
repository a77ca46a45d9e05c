"""
Symmetric finite-support distributions, moment profiles and class-member sampling.
"""

from .symmetric_dist import (
    ClassKind, SymmetricAtomDist, MomentProfile, ApproxParams,
    point_mass, make_rademacher, make_extremal, make_approx, moments, uniform_magnitude
)
from .member_sampler import ClassMemberSampler, sample_member

__all__ = [
    'ClassKind', 'SymmetricAtomDist', 'MomentProfile', 'ApproxParams',
    'point_mass', 'make_rademacher', 'make_extremal', 'make_approx', 'moments',
    'uniform_magnitude', 'ClassMemberSampler', 'sample_member'
]
