"""
Command-line surface: problem files and the bound, constant and verify commands.
"""

from .problem_file import ProblemFile, PROBLEM_SCHEMA, parse_problem, load_problem
from .commands import (
    EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, cmd_bound, cmd_constant, cmd_verify, parse_list
)

__all__ = [
    'ProblemFile', 'PROBLEM_SCHEMA', 'parse_problem', 'load_problem',
    'EXIT_OK', 'EXIT_VIOLATIONS', 'EXIT_USAGE',
    'cmd_bound', 'cmd_constant', 'cmd_verify', 'parse_list'
]
