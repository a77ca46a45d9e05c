"""
Best constants in Rosenthal-type inequalities for bilinear forms.
"""

from .best_constants import (
    ConstantKind, ConstantQuery, ConstantReport, RosenthalConstantCalculator
)

__all__ = ['ConstantKind', 'ConstantQuery', 'ConstantReport', 'RosenthalConstantCalculator']
