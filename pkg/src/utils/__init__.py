"""
Utility modules for the moment bound toolkit.
"""

from .report_io import ReportWriter
from .error_handler import (
    MomentBoundError, InfeasibleProfileError, UnsupportedRegimeError,
    EnumerationCapError, SamplingError, ProblemFileError,
    retry_with_fresh_seed, log_error, require
)
from .numerics import (
    stable_sum, abs_power, scalar_abs_power, expectation,
    relative_gap, close, pair_count, format_number
)

__all__ = [
    'ReportWriter',
    'MomentBoundError', 'InfeasibleProfileError', 'UnsupportedRegimeError',
    'EnumerationCapError', 'SamplingError', 'ProblemFileError',
    'retry_with_fresh_seed', 'log_error', 'require',
    'stable_sum', 'abs_power', 'scalar_abs_power', 'expectation',
    'relative_gap', 'close', 'pair_count', 'format_number'
]
