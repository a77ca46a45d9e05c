#!/usr/bin/env python3
"""
Tests for the best Rosenthal-type constants B4..B7.
"""

import sys
import os
import math

import pytest

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

from config.settings import WITNESS_M, WITNESS_MIN_FRACTION
from distributions.member_sampler import sample_member
from distributions.symmetric_dist import ClassKind, MomentProfile, make_rademacher
from rosenthal.best_constants import ConstantKind, ConstantQuery, RosenthalConstantCalculator
from utils.error_handler import InfeasibleProfileError

@pytest.fixture(scope="module")
def calculator():
    return RosenthalConstantCalculator()

def test_query_normalisation():
    query = ConstantQuery("b6", 3, 4)
    assert query.which is ConstantKind.B6
    assert query.t == 3.0
    assert query.regime == "2<t<4"
    assert ConstantQuery(ConstantKind.B5, 4.0, 2).regime == "t>=4"
    assert ConstantKind.B7.form_kind.value == "decoupled"
    assert ConstantKind.B4.uses_pair_count and not ConstantKind.B5.uses_pair_count

def test_query_validation():
    with pytest.raises(InfeasibleProfileError):
        ConstantQuery("B4", 2.0, 3)
    with pytest.raises(InfeasibleProfileError):
        ConstantQuery("B4", 3.0, 1)
    with pytest.raises(ValueError):
        ConstantQuery("B9", 3.0, 2)

def test_derived_examples(calculator):
    assert calculator.derived_value(ConstantQuery("B5", 4.0, 2)) == pytest.approx(0.25, rel=1e-12)
    assert calculator.derived_value(ConstantQuery("B4", 4.0, 2)) == pytest.approx(1.0, rel=1e-12)
    assert calculator.derived_value(ConstantQuery("B4", 3.0, 2)) == pytest.approx(1.0, rel=1e-12)

def test_corner_profile_has_unit_normaliser(calculator):
    for which in ConstantKind:
        for t, n in [(2.5, 3), (3.0, 4), (5.0, 3)]:
            query = ConstantQuery(which, t, n)
            profile = calculator.corner_profile(query)
            c = n * (n - 1) / 2 if which.uses_pair_count else n * n
            assert c * profile.b ** 2 == pytest.approx(1.0, rel=1e-12)
            assert c ** (t / 2.0) * profile.a ** (2.0 * t) == pytest.approx(1.0, rel=1e-12)

def test_both_routes_for_two_coordinates(calculator):
    report = calculator.best_constant(ConstantQuery("B4", 3.0, 2))
    assert report.literal_value == pytest.approx(1.0, rel=1e-12)
    assert report.relative_gap == pytest.approx(0.0, abs=1e-12)

@pytest.mark.parametrize("which", ["B4", "B5", "B6", "B7"])
@pytest.mark.parametrize("n", [2, 3])
def test_routes_agree_for_large_t(calculator, which, n):
    report = calculator.best_constant(ConstantQuery(which, 5.0, n))
    assert report.literal_value == pytest.approx(report.derived_value, rel=1e-12)
    assert report.regime == "t>=4"

@pytest.mark.parametrize("which", ["B4", "B5", "B6", "B7"])
@pytest.mark.parametrize("t", [2.5, 3.0, 4.0, 5.0])
def test_scale_invariance(calculator, which, t):
    query = ConstantQuery(which, t, 3)
    assert calculator.scale_invariance_check(query, 7.3) < 1e-9
    assert calculator.scale_invariance_check(query, 0.01) < 1e-9

@pytest.mark.parametrize("which", ["B4", "B5", "B6", "B7"])
def test_witness_is_tight_for_large_t(calculator, which):
    query = ConstantQuery(which, 4.5, 3)
    assert calculator.witness_ratio(query) == pytest.approx(calculator.derived_value(query), rel=1e-9)

@pytest.mark.parametrize("which", ["B4", "B5", "B6", "B7"])
@pytest.mark.parametrize("t", [2.5, 3.0, 3.5])
@pytest.mark.parametrize("n", [2, 3])
def test_witness_approaches_constant_below_four(calculator, which, t, n):
    query = ConstantQuery(which, t, n)
    derived = calculator.derived_value(query)
    ratio = calculator.witness_ratio(query, WITNESS_M)
    assert ratio <= derived * (1 + 1e-9)
    assert ratio >= WITNESS_MIN_FRACTION * derived

@pytest.mark.parametrize("which", ["B4", "B5", "B6", "B7"])
@pytest.mark.parametrize("t", [2.5, 4.0])
def test_random_laws_respect_constant(calculator, which, t):
    query = ConstantQuery(which, t, 3)
    constant = calculator.derived_value(query)
    for seed in range(8):
        class_kind = ClassKind.M1 if seed % 2 else ClassKind.M2
        dist = sample_member(MomentProfile(1.0, 1.0 + seed, t, class_kind), 2, seed)
        assert calculator.ratio(query, dist) <= constant * (1 + 1e-9)

def test_ratio_of_point_mass_is_zero(calculator):
    assert calculator.ratio(ConstantQuery("B4", 3.0, 2), make_rademacher(0.0)) == 0.0

def test_constant_table(calculator):
    rows = calculator.constant_table(["B4"], [3.0, 4.0], [2])
    assert [r.derived_value for r in rows] == pytest.approx([1.0, 1.0])
    table = calculator.constant_table(["B7", "B4", "B6", "B5", "B4"], [3.0], [4, 2, 3])
    assert len(table) == 12
    assert [r.query.sort_key for r in table] == sorted(r.query.sort_key for r in table)
    assert all(math.isfinite(r.derived_value) and r.derived_value > 0 for r in table)
    with pytest.raises(InfeasibleProfileError):
        calculator.constant_table([], [3.0], [2])

def test_report_row_columns(calculator):
    row = calculator.best_constant(ConstantQuery("B5", 4.0, 2)).to_row()
    assert list(row) == ['which', 't', 'n', 'literal', 'derived', 'gap']
    assert row['which'] == "B5"
