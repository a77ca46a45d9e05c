"""
Numerical verification of the comparison inequalities, extremal bounds and best constants.
"""

from .report import VerifyReport
from .law_generator import BoundaryBiasedGenerator, random_profile, trial_seed
from .lemma_checks import LemmaPoint, LemmaVerifier, LEMMA_REGIMES, lemma_grid
from .extremality_checks import ExtremalityVerifier, approx_law, uniform_profiles
from .convergence_checks import ConvergenceVerifier
from .rosenthal_checks import RosenthalVerifier
from .coordinate_checks import CoordinateStepVerifier, step_weights
from .suites import SUITES, SuiteRunner, run_suite

__all__ = [
    'VerifyReport', 'BoundaryBiasedGenerator', 'random_profile', 'trial_seed',
    'LemmaPoint', 'LemmaVerifier', 'LEMMA_REGIMES', 'lemma_grid',
    'ExtremalityVerifier', 'approx_law', 'uniform_profiles',
    'ConvergenceVerifier', 'RosenthalVerifier', 'CoordinateStepVerifier', 'step_weights',
    'SUITES', 'SuiteRunner', 'run_suite'
]
