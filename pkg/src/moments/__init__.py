"""
Exact and Monte Carlo moments of linear and bilinear forms.
"""

from .moment_engine import FormKind, FormSpec, MomentEngine
from .rademacher_reductions import (
    binomial_weights, rademacher_sum_moment, rademacher_chaos_ordinary,
    rademacher_chaos_decoupled, lattice_chaos_ordinary, lattice_chaos_decoupled
)

__all__ = [
    'FormKind', 'FormSpec', 'MomentEngine',
    'binomial_weights', 'rademacher_sum_moment', 'rademacher_chaos_ordinary',
    'rademacher_chaos_decoupled', 'lattice_chaos_ordinary', 'lattice_chaos_decoupled'
]
