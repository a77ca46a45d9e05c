"""
Configuration settings for the bilinear-form moment bound toolkit.
"""

from .settings import *

__all__ = [
    'ENUM_CAP', 'CONSTRUCTION_RTOL', 'SOLVE_RTOL', 'VIOLATION_RTOL',
    'SAMPLER_MAX_ROUNDS', 'SAMPLER_DEFAULT_MAGNITUDES', 'BOUNDARY_PROBABILITY',
    'DEFAULT_SEED', 'DEFAULT_LEMMA_TRIALS', 'DEFAULT_EXTREMALITY_TRIALS',
    'DEFAULT_ROSENTHAL_TRIALS', 'DEFAULT_COORDINATE_TRIALS', 'SEED_RETRIES',
    'WITNESS_M', 'WITNESS_MIN_FRACTION', 'CONVERGENCE_SCHEDULE', 'CONVERGENCE_REL_THRESHOLD',
    'PRINT_DIGITS', 'PROBLEM_FORMAT', 'CSV_COLUMNS',
    'DATA_DIR', 'PROBLEMS_DIR', 'REPORTS_DIR',
    'LOG_LEVEL', 'LOG_FORMAT', 'LOG_DIR', 'LOG_FILE'
]
