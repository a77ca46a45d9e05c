#!/usr/bin/env python3
"""
Tests for problem files and the rbf.py command-line surface.
"""

import sys
import os
import io
import json
import logging

import pandas as pd
import pytest

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

import rbf
from cli.problem_file import load_problem, parse_problem
from moments.moment_engine import FormKind
from rosenthal.best_constants import ConstantQuery, RosenthalConstantCalculator
from utils.error_handler import ProblemFileError
from utils.report_io import ReportWriter

PROBLEMS = os.path.join(os.path.dirname(__file__), 'data', 'problems')

def problem(name):
    return os.path.join(PROBLEMS, name)

def run(argv, capsys):
    code = rbf.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err

def field(output, key):
    for line in output.splitlines():
        if line.startswith(f"{key}: "):
            return line.split(": ", 1)[1]
    raise AssertionError(f"{key} not in output:\n{output}")

def test_load_golden_problems():
    parsed = load_problem(problem('decoupled_n2_t3.json'))
    assert parsed.form is FormKind.DECOUPLED
    assert parsed.n == 2 and len(parsed.y_profiles) == 2
    assert load_problem(problem('ordinary_n3_t5_m2.json')).seed == 7

def test_problem_errors_are_line_anchored():
    text = '{\n  "format": "rbf-v1",\n  "form": "ordinary",\n  "t": 1.5,\n  "n": 2,\n  "a": [1, 1],\n  "b": [2, 2]\n}\n'
    with pytest.raises(ProblemFileError) as info:
        parse_problem(text, "p.json")
    assert info.value.line == 4
    assert str(info.value).startswith("p.json:4:")

def test_problem_error_cases():
    base = {"format": "rbf-v1", "form": "ordinary", "t": 3, "n": 2, "a": [1, 1], "b": [2, 2]}
    cases = [
        dict(base, format="rbf-v0"),
        dict(base, a=[1, 1, 1]),
        dict(base, b=[2, 0.5]),
        dict(base, c=[1, 1]),
        dict(base, form="decoupled"),
        dict(base, extra=1),
    ]
    for case in cases:
        with pytest.raises(ProblemFileError):
            parse_problem(json.dumps(case, indent=2))
    with pytest.raises(ProblemFileError) as info:
        parse_problem('{\n  "format": "rbf-v1",\n  oops\n}')
    assert info.value.line == 3

def test_problem_to_dict_round_trip():
    parsed = load_problem(problem('ordinary_n3_t5_m2.json'))
    assert parse_problem(json.dumps(parsed.to_dict())) == parsed

@pytest.mark.parametrize("name, value", [
    ('ordinary_n2_t3.json', '4'),
    ('ordinary_n3_degenerate_t3.json', '7.5'),
    ('decoupled_n2_t3.json', '10'),
])
def test_bound_command(capsys, name, value):
    code, out, _ = run(['bound', problem(name), '--sup'], capsys)
    assert code == 0
    assert field(out, 'value') == value
    assert field(out, 'regime') == 'sup_2to4'

def test_bound_breakdown(capsys):
    code, out, _ = run(['bound', problem('ordinary_n2_t3.json'), '--sup'], capsys)
    assert code == 0
    assert "  product_term: 1" in out.splitlines()
    assert "  cross_terms: 2" in out.splitlines()
    assert "  chaos_term: 1" in out.splitlines()

def test_bound_json_format(capsys):
    code, out, _ = run(['bound', problem('ordinary_n3_t5_m2.json'), '--sup', '--format', 'json'], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload['regime'] == 'sup_ge4'
    assert payload['value'] > 0

def test_bound_unsupported_inf(capsys):
    code, _, err = run(['bound', problem('ordinary_n2_t2_5.json'), '--inf'], capsys)
    assert code == 2
    assert "no infimum formula for 2<t<3" in err
    code, _, _ = run(['bound', problem('ordinary_n3_t5_m2.json'), '--inf'], capsys)
    assert code == 2

def test_bound_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "format": "rbf-v1",\n  "form": "cubic",\n  "t": 3,\n  "n": 2,\n'
                    '  "a": [1, 1],\n  "b": [2, 2]\n}\n')
    code, _, err = run(['bound', str(path), '--sup'], capsys)
    assert code == 2
    assert f"{path}:3:" in err

def test_bound_requires_side(capsys):
    code, _, _ = run(['bound', problem('ordinary_n2_t3.json')], capsys)
    assert code == 2

@pytest.mark.parametrize("which, t, n, derived", [("B5", "4", "2", "0.25"), ("B4", "3", "2", "1")])
def test_constant_command(capsys, which, t, n, derived):
    code, out, _ = run(['constant', '--which', which, '--t', t, '--n', n], capsys)
    assert code == 0
    assert field(out, 'derived') == derived

def test_constant_table_csv(capsys, tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run(['constant', '--which', 'B4', '--table', '--t-list', '3,4', '--n-list', '2,3',
                        '--format', 'csv', '--out', str(target)], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "which,t,n,literal,derived,gap"
    assert len(lines) == 5
    assert target.read_text() == out
    assert [row["n"] for row in ReportWriter().load_from_csv(str(target))] == [2, 3, 2, 3]

    # recomputing every row reproduces the printed values
    calculator = RosenthalConstantCalculator()
    for row in pd.read_csv(io.StringIO(out)).to_dict('records'):
        report = calculator.best_constant(ConstantQuery(row['which'], row['t'], int(row['n'])))
        assert f"{report.derived_value:.12g}" == f"{row['derived']:.12g}"
        assert f"{report.literal_value:.12g}" == f"{row['literal']:.12g}"

def test_constant_output_is_reproducible(capsys):
    argv = ['constant', '--which', 'B4,B5,B6,B7', '--table', '--t-list', '3', '--n-list', '2,3,4']
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first[0] == 0
    assert first[1] == second[1]

@pytest.mark.parametrize("argv", [
    ['constant', '--which', 'B4', '--t', '3'],
    ['constant', '--which', 'B4', '--t', 'abc', '--n', '2'],
    ['constant', '--which', 'B9', '--t', '3', '--n', '2'],
    ['constant', '--which', 'B4', '--t', '2', '--n', '2'],
    ['constant', '--which', 'B4', '--table', '--t-list', '3'],
    ['frobnicate'],
    [],
])
def test_bad_flags_exit_two(capsys, argv):
    code, _, _ = run(argv, capsys)
    assert code == 2

def test_verify_command(capsys, tmp_path):
    target = tmp_path / "lemma1.json"
    code, out, _ = run(['verify', '--suite', 'lemma1', '--seed', '7', '--trials', '50',
                        '--out', str(target)], capsys)
    assert code == 0
    assert field(out, 'violations') == '0'
    report = ReportWriter().load_from_json(str(target))
    assert report['violations'] == 0
    assert report['seed'] == 7

def test_verify_unknown_suite(capsys):
    code, _, err = run(['verify', '--suite', 'bogus'], capsys)
    assert code == 2
    assert "bogus" in err

@pytest.mark.parametrize("fmt", ['structured', 'json'])
def test_bound_output_is_reproducible(capsys, fmt):
    argv = ['bound', problem('decoupled_n2_t3.json'), '--sup', '--format', fmt]
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]

def test_verify_report_is_reproducible(capsys, tmp_path):
    outputs = []
    for name in ('first.json', 'second.json'):
        target = tmp_path / name
        code, out, _ = run(['verify', '--suite', 'lemma1', '--seed', '7', '--trials', '5',
                            '--out', str(target)], capsys)
        assert code == 0
        outputs.append((target.read_bytes(), [line for line in out.splitlines()
                                              if not line.startswith("report: ")]))
    assert outputs[0] == outputs[1]

def test_log_file_option(capsys, tmp_path):
    target = tmp_path / 'logs' / 'run.log'
    code, _, _ = run(['--log-file', str(target), 'constant', '--which', 'B4', '--t', '3', '--n', '2'],
                     capsys)
    assert code == 0
    assert target.exists()

    code, _, _ = run(['--log-file', '', 'constant', '--which', 'B4', '--t', '3', '--n', '2'], capsys)
    assert code == 0
    assert not [h for h in logging.getLogger().handlers if type(h) is logging.FileHandler]
