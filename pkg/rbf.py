#!/usr/bin/env python3
"""
Moment bounds for bilinear forms in symmetric random variables.

    rbf.py bound data/problems/ordinary_n2_t3.json --sup
    rbf.py constant --which B4 --t 3 --n 2
    rbf.py constant --which B4,B5 --table --t-list 3,4 --n-list 2,3 --format csv
    rbf.py verify --suite lemma1 --seed 7 --trials 50
"""

import argparse
import logging
import sys
import os
from typing import Optional

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

from cli.commands import EXIT_USAGE, cmd_bound, cmd_constant, cmd_verify, parse_list
from config.settings import DEFAULT_SEED, LOG_FILE, LOG_FORMAT, LOG_LEVEL
from verification.suites import SUITES

logger = logging.getLogger(__name__)

class UsageErrorParser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting, so main() owns the exit code."""

    def error(self, message):
        raise ValueError(message)

def setup_logging(level: str, log_file: Optional[str] = LOG_FILE) -> None:
    """Log to stderr, and to ``log_file`` unless it is empty."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        parent = os.path.dirname(log_file)
        if parent:
            os.makedirs(parent, exist_ok=True)
        handlers.insert(0, logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True
    )

def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(description='Exact moments, extremal bounds and best Rosenthal constants '
                                          'for bilinear forms in symmetric random variables')
    parser.add_argument(
        '--log-level',
        type=str,
        default=LOG_LEVEL,
        help=f'Logging level (default: {LOG_LEVEL})'
    )
    parser.add_argument(
        '--log-file',
        type=str,
        default=LOG_FILE,
        help=f'Log file, empty to log to stderr only (default: {LOG_FILE or "none"})'
    )
    subparsers = parser.add_subparsers(dest='command', parser_class=UsageErrorParser)

    bound = subparsers.add_parser('bound', help='Evaluate the sup or inf bound of a problem file')
    bound.add_argument('problem', help='Path to an rbf-v1 problem file')
    side = bound.add_mutually_exclusive_group(required=True)
    side.add_argument('--sup', dest='side', action='store_const', const='sup', help='Supremum bound')
    side.add_argument('--inf', dest='side', action='store_const', const='inf', help='Infimum bound')
    bound.add_argument('--format', choices=['structured', 'json'], default='structured',
                       help='Output format (default: structured)')

    constant = subparsers.add_parser('constant', help='Best constants B4..B7')
    constant.add_argument('--which', type=lambda s: parse_list(s, str.upper), required=True,
                          help='Constant name(s), comma-separated for tables (e.g. B4,B5)')
    constant.add_argument('--t', type=float, help='Exponent t > 2')
    constant.add_argument('--n', type=int, help='Dimension n >= 2')
    constant.add_argument('--table', action='store_true', help='Compute a table over --t-list x --n-list')
    constant.add_argument('--t-list', type=lambda s: parse_list(s, float), help='Exponents, e.g. 3,4')
    constant.add_argument('--n-list', type=lambda s: parse_list(s, int), help='Dimensions, e.g. 2,3')
    constant.add_argument('--format', choices=['structured', 'csv'], default='structured',
                          help='Output format (default: structured)')
    constant.add_argument('--out', type=str, help='Also write the rows to this CSV file')

    verify = subparsers.add_parser('verify', help='Run a numerical verification suite')
    verify.add_argument('--suite', required=True, help=f'One of: {", ".join(SUITES)}')
    verify.add_argument('--seed', type=int, default=DEFAULT_SEED,
                        help=f'Run seed (default: {DEFAULT_SEED})')
    verify.add_argument('--trials', type=int, help='Trials per configuration (default: per suite)')
    verify.add_argument('--out', type=str, help='Report path (default: data/reports/<suite>_seed<seed>.json)')
    return parser

def main(argv=None) -> int:
    """Main function; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise ValueError("a command is required: bound, constant or verify")
    except ValueError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE

    setup_logging(args.log_level, args.log_file)

    try:
        if args.command == 'bound':
            return cmd_bound(args.problem, args.side, args.format)
        if args.command == 'constant':
            return cmd_constant(args.which, args.t, args.n, args.table, args.t_list, args.n_list,
                                args.format, args.out)
        return cmd_verify(args.suite, args.seed, args.trials, args.out)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
