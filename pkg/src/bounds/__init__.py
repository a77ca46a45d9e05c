"""
Extremal bounds for moments of bilinear forms and the single-coordinate step.
"""

from .extremal_bounds import (
    BoundRegime, BoundReport, ExtremalBoundCalculator, extremal_law, sup_regime, inf_regime
)
from .coordinate_step import coordinate_objective, coordinate_step_bound

__all__ = [
    'BoundRegime', 'BoundReport', 'ExtremalBoundCalculator', 'extremal_law',
    'sup_regime', 'inf_regime', 'coordinate_objective', 'coordinate_step_bound'
]
