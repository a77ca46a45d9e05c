"""
Command implementations behind ``rbf.py``.

Each command writes its result to ``out``, writes error messages to ``err``
and returns the process exit code: 0 on success, 1 when a verification
suite found violations, 2 on usage errors and infeasible input.
"""

import logging
import os
import sys
from typing import List, Optional, Sequence, TextIO

from bounds.extremal_bounds import ExtremalBoundCalculator
from config.settings import CSV_COLUMNS, DEFAULT_SEED, PRINT_DIGITS, REPORTS_DIR
from rosenthal.best_constants import ConstantQuery, RosenthalConstantCalculator
from utils.error_handler import MomentBoundError, log_error
from utils.report_io import ReportWriter
from verification.suites import SUITES, SuiteRunner
from .problem_file import load_problem

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2

def parse_list(text: str, cast=float) -> List:
    """Parse a comma-separated list such as ``3,4`` or ``B4,B5``."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError(f"Empty list: {text!r}")
    return [cast(item) for item in items]

def _fail(error: Exception, context: str, err: Optional[TextIO]) -> int:
    log_error(error, context)
    (err or sys.stderr).write(f"error: {error}\n")
    return EXIT_USAGE

def cmd_bound(problem_path: str, side: str, fmt: str = "structured",
              out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """
    Evaluate the sup or inf bound of a problem file.

    Args:
        problem_path: Path to the problem file
        side: "sup" or "inf"
        fmt: "structured" or "json"
        out: Output stream
        err: Error stream

    Returns:
        Exit code
    """
    writer = ReportWriter(PRINT_DIGITS)
    out = out or sys.stdout
    try:
        problem = load_problem(problem_path)
        calculator = ExtremalBoundCalculator()
        report = calculator.bound(problem.form, side, problem.x_profiles, problem.t,
                                  problem.y_profiles or None)
    except (MomentBoundError, ValueError) as e:
        return _fail(e, "bound command", err)

    payload = {'problem': problem_path, 'side': side, 'class': problem.class_kind.value}
    payload.update(report.to_dict())
    if fmt == "json":
        out.write(writer.render_json(payload) + "\n")
    else:
        out.write(writer.render_key_values(payload) + "\n")
    return EXIT_OK

def cmd_constant(which: Sequence[str], t: Optional[float] = None, n: Optional[int] = None,
                 table: bool = False, t_list: Optional[Sequence[float]] = None,
                 n_list: Optional[Sequence[int]] = None, fmt: str = "structured",
                 out_path: Optional[str] = None,
                 out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """
    Print one best constant or a table of them.

    Args:
        which: Constant names (B4..B7)
        t: Exponent for a single query
        n: Dimension for a single query
        table: Compute the product of which x t_list x n_list
        t_list: Exponents for the table
        n_list: Dimensions for the table
        fmt: "structured" or "csv"
        out_path: Optional CSV file receiving the rows
        out: Output stream
        err: Error stream

    Returns:
        Exit code
    """
    writer = ReportWriter(PRINT_DIGITS)
    out = out or sys.stdout
    calculator = RosenthalConstantCalculator()
    try:
        if table:
            if not t_list or not n_list:
                raise ValueError("--table needs --t-list and --n-list")
            reports = calculator.constant_table(which, t_list, n_list)
        else:
            if t is None or n is None:
                raise ValueError("--t and --n are required without --table")
            if len(which) != 1:
                raise ValueError("A single query takes exactly one --which value")
            reports = [calculator.best_constant(ConstantQuery(which[0], t, n))]
    except (MomentBoundError, ValueError) as e:
        return _fail(e, "constant command", err)

    rows = [r.to_row() for r in reports]
    if fmt == "csv":
        out.write(writer.render_csv(rows, CSV_COLUMNS))
    else:
        out.write("\n\n".join(writer.render_key_values(r.to_dict()) for r in reports) + "\n")
    if out_path:
        writer.save_to_csv(rows, out_path, CSV_COLUMNS)
    return EXIT_OK

def default_report_path(suite: str, seed: int) -> str:
    return os.path.join(REPORTS_DIR, f"{suite}_seed{seed}.json")

def cmd_verify(suite: str, seed: int = DEFAULT_SEED, trials: Optional[int] = None,
               out_path: Optional[str] = None,
               out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """
    Run a verification suite and write its report.

    Args:
        suite: Suite name
        seed: Run seed
        trials: Per-configuration trial override
        out_path: Report file (defaults to data/reports/<suite>_seed<seed>.json)
        out: Output stream for the summary
        err: Error stream

    Returns:
        0 without violations, 1 with violations, 2 on usage errors
    """
    if suite not in SUITES:
        return _fail(ValueError(f"Unknown suite {suite!r}; expected one of {', '.join(SUITES)}"),
                     "verify command", err)
    out = out or sys.stdout
    writer = ReportWriter(PRINT_DIGITS)
    try:
        report = SuiteRunner().run(suite, seed, trials)
    except (MomentBoundError, ValueError) as e:
        return _fail(e, "verify command", err)

    path = out_path or default_report_path(suite, seed)
    writer.save_to_json(report.to_dict(), path)
    summary = report.summary()
    summary['report'] = path
    out.write(writer.render_key_values(summary) + "\n")
    if not report.passed:
        logger.error(f"Suite {suite} found {report.violations} violations")
        return EXIT_VIOLATIONS
    return EXIT_OK
