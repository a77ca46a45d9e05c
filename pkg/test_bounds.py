#!/usr/bin/env python3
"""
Tests for the extremal sup/inf bounds and the single-coordinate step.
"""

import sys
import os
import math

import numpy as np
import pytest

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

from bounds.extremal_bounds import (
    BoundRegime, ExtremalBoundCalculator, extremal_law, inf_regime, sup_regime
)
from bounds.coordinate_step import coordinate_objective, coordinate_step_bound
from distributions.symmetric_dist import (
    ClassKind, MomentProfile, make_approx, make_extremal, make_rademacher
)
from distributions.member_sampler import sample_member
from moments.moment_engine import FormKind, FormSpec, MomentEngine
from utils.error_handler import InfeasibleProfileError, UnsupportedRegimeError

@pytest.fixture
def calculator():
    return ExtremalBoundCalculator()

def profiles(a, b, t, class_kind=ClassKind.M1):
    return [MomentProfile(x, y, t, class_kind) for x, y in zip(a, b)]

def test_regimes():
    assert sup_regime(3.0) is BoundRegime.SUP_2TO4
    assert sup_regime(4.0) is BoundRegime.SUP_GE4
    assert inf_regime(3.0) is BoundRegime.INF_3TO4
    assert inf_regime(4.0) is BoundRegime.INF_GE4
    assert BoundRegime.SUP_2TO4.is_additive and BoundRegime.INF_GE4.is_additive
    with pytest.raises(UnsupportedRegimeError, match="no infimum formula for 2<t<3"):
        inf_regime(2.5)

def test_sup_ordinary_additive_breakdown(calculator):
    report = calculator.sup_ordinary(profiles((1, 1), (2, 2), 3.0), 3.0)
    assert report.value == pytest.approx(4.0)
    assert (report.product_term, report.cross_terms, report.chaos_term) == pytest.approx((1.0, 2.0, 1.0))
    assert report.regime is BoundRegime.SUP_2TO4

def test_sup_ordinary_examples(calculator):
    assert calculator.sup_ordinary(profiles((1, 1), (2, 2), 4.0), 4.0).value == pytest.approx(4.0)
    degenerate = calculator.sup_ordinary(profiles((1, 1, 1), (1, 1, 1), 3.0), 3.0)
    assert degenerate.value == pytest.approx(7.5)
    # 3 pairs of unit excess, 3 cross terms E|U + U'|^3 = 4, chaos 7.5
    assert calculator.sup_ordinary(profiles((1, 1, 1), (2, 2, 2), 3.0), 3.0).value == pytest.approx(22.5)

def test_sup_ge4_breakdown_is_zero_filled(calculator):
    report = calculator.sup_ordinary(profiles((1, 1), (2, 2), 5.0), 5.0)
    assert report.terms == {'product_term': 0.0, 'cross_terms': 0.0, 'chaos_term': 0.0}
    assert report.to_dict()['regime'] == "sup_ge4"

def test_sup_decoupled_examples(calculator):
    unit = profiles((1, 1), (1, 1), 4.0)
    assert calculator.sup_decoupled(unit, unit, 4.0).value == pytest.approx(8.0)
    unit3 = profiles((1, 1), (1, 1), 3.0)
    assert calculator.sup_decoupled(unit3, unit3, 3.0).value == pytest.approx(4.0)
    heavy = profiles((1, 1), (2, 2), 3.0)
    report = calculator.sup_decoupled(heavy, heavy, 3.0)
    # product 2, cross 2 + 2, chaos E|U1V2 + U2V1|^3 = 4
    assert report.value == pytest.approx(10.0)
    assert report.product_term == pytest.approx(2.0)
    assert report.cross_terms == pytest.approx(4.0)

def test_sup_decoupled_witness_approaches_bound(calculator):
    heavy = profiles((1, 1), (2, 2), 3.0)
    bound = calculator.sup_decoupled(heavy, heavy, 3.0).value
    dist, _ = make_approx(1.0, 2.0, 3.0, 10**4)
    achieved = MomentEngine().moment_bilinear(FormSpec(FormKind.DECOUPLED, (dist,) * 2, 3.0, (dist,) * 2))
    assert achieved <= bound * (1 + 1e-9)
    assert achieved >= 0.95 * bound

def test_inf_ordinary_examples(calculator):
    assert calculator.inf_ordinary(profiles((1, 1, 1), (1, 1, 1), 3.0), 3.0).value == pytest.approx(7.5)
    at_three = calculator.inf_ordinary(profiles((1, 1), (2, 2), 3.0), 3.0)
    law = make_extremal(1.0, 2.0, 3.0)
    expected = MomentEngine().moment_bilinear(FormSpec(FormKind.ORDINARY, (law, law), 3.0))
    assert at_three.value == pytest.approx(expected)
    assert calculator.inf_ordinary(profiles((1, 1), (2, 2), 4.0), 4.0).value == pytest.approx(4.0)

def test_inf_decoupled_examples(calculator):
    unit = profiles((1, 1), (1, 1), 3.0)
    assert calculator.inf_decoupled(unit, unit, 3.0).value == pytest.approx(4.0)
    heavy = profiles((1, 1), (2, 2), 3.5)
    law = make_extremal(1.0, 2.0, 3.5)
    expected = MomentEngine().moment_bilinear(FormSpec(FormKind.DECOUPLED, (law, law), 3.5, (law, law)))
    assert calculator.inf_decoupled(heavy, heavy, 3.5).value == pytest.approx(expected)
    heavy4 = profiles((1, 1), (2, 2), 4.0)
    inf = calculator.inf_decoupled(heavy4, heavy4, 4.0).value
    assert inf <= calculator.sup_decoupled(heavy4, heavy4, 4.0).value * (1 + 1e-12)

def test_inf_rejects_unsupported_inputs(calculator):
    with pytest.raises(UnsupportedRegimeError, match="2<t<3"):
        calculator.inf_ordinary(profiles((1, 1), (2, 2), 2.5), 2.5)
    with pytest.raises(UnsupportedRegimeError):
        calculator.inf_ordinary(profiles((1, 1), (2, 2), 3.0, ClassKind.M2), 3.0)

def test_input_validation(calculator):
    with pytest.raises(InfeasibleProfileError):
        calculator.sup_ordinary(profiles((1,), (2,), 3.0), 3.0)
    with pytest.raises(InfeasibleProfileError):
        calculator.sup_ordinary(profiles((1, 1), (2, 2), 3.0), 3.5)
    with pytest.raises(InfeasibleProfileError):
        calculator.sup_decoupled(profiles((1, 1), (2, 2), 3.0), profiles((1,), (2,), 3.0), 3.0)
    with pytest.raises(ValueError):
        calculator.bound(FormKind.ORDINARY, "max", profiles((1, 1), (2, 2), 3.0), 3.0)

def test_bound_dispatch(calculator):
    p = profiles((1, 0.8), (2, 1), 3.5)
    assert calculator.bound(FormKind.ORDINARY, "sup", p, 3.5) == calculator.sup_ordinary(p, 3.5)
    assert calculator.bound(FormKind.DECOUPLED, "inf", p, 3.5, p) == calculator.inf_decoupled(p, p, 3.5)

@pytest.mark.parametrize("t", [2.5, 3.0, 3.5, 4.0, 5.0])
def test_sampled_members_respect_sup(calculator, t):
    p = profiles((1.0, 0.8, 1.25), (2.0, 0.6, 5.0), t, ClassKind.M2)
    bound = calculator.sup_ordinary(p, t).value
    engine = calculator.engine
    for seed in range(10):
        dists = tuple(sample_member(q, 2, seed * 3 + i) for i, q in enumerate(p))
        assert engine.moment_bilinear(FormSpec(FormKind.ORDINARY, dists, t)) <= bound * (1 + 1e-9)

def test_extremal_law_point_mass_for_zero_profile():
    assert extremal_law(MomentProfile(0.0, 1.0, 3.0, ClassKind.M2)).is_point_mass

@pytest.mark.parametrize("t", [3.0, 4.5])
def test_coordinate_step_two_coordinates_is_exact(t):
    # n = 2, zero weights: both sides factorize into b_k E|X_2|^t
    profile = MomentProfile(1.0, 2.0, t)
    x = [sample_member(profile, 2, 4), make_extremal(0.7, 0.5, t)]
    bound = coordinate_step_bound(FormKind.ORDINARY, x, 0, profile, t, [0.0, 0.0])
    assert coordinate_objective(FormKind.ORDINARY, x, 0, t, [0.0, 0.0]) == pytest.approx(bound, rel=1e-10)

@pytest.mark.parametrize("t, class_kind", [(3.0, ClassKind.M2), (4.5, ClassKind.M1)])
def test_coordinate_step_decoupled_direction(t, class_kind):
    profile = MomentProfile(1.0, 2.0, t, class_kind)
    x = [None, make_extremal(0.7, 0.5, t)]
    y = [make_rademacher(0.5), make_extremal(1.0, 3.0, t)]
    weights = [0.0, 1.0]
    bound = coordinate_step_bound(FormKind.DECOUPLED, x, 0, profile, t, weights, y)
    for seed in range(10):
        x[0] = sample_member(profile, 2, seed)
        value = coordinate_objective(FormKind.DECOUPLED, x, 0, t, weights, y)
        if t < 4.0:
            assert value <= bound * (1 + 1e-9)
        else:
            assert value >= bound * (1 - 1e-9)

def test_coordinate_step_sup_direction():
    t = 3.0
    profile = MomentProfile(1.0, 2.0, t, ClassKind.M2)
    others = [make_extremal(0.8, 1.0, t), make_rademacher(1.2)]
    weights = [0.0, 1.0, 0.5]
    bound = coordinate_step_bound(FormKind.ORDINARY, [None] + others, 0, profile, t, weights)
    for seed in range(10):
        x = [sample_member(profile, 3, seed)] + others
        assert coordinate_objective(FormKind.ORDINARY, x, 0, t, weights) <= bound * (1 + 1e-9)
    dist, _ = make_approx(1.0, 2.0, t, 10**4)
    near = coordinate_objective(FormKind.ORDINARY, [dist] + others, 0, t, weights)
    assert near >= 0.95 * bound

def test_coordinate_step_inf_direction():
    t = 5.0
    profile = MomentProfile(1.0, 2.0, t, ClassKind.M1)
    others = [make_extremal(0.8, 1.0, t), make_rademacher(1.2)]
    weights = [0.0, 1.0, 0.5]
    bound = coordinate_step_bound(FormKind.ORDINARY, [None] + others, 0, profile, t, weights)
    for seed in range(10):
        x = [sample_member(profile, 3, seed)] + others
        assert coordinate_objective(FormKind.ORDINARY, x, 0, t, weights) >= bound * (1 - 1e-9)

def seeded_bound_profiles(n, t, seed, class_kind=ClassKind.M1):
    rng = np.random.default_rng(seed)
    a = np.exp(rng.uniform(math.log(0.5), math.log(2.0), size=n))
    ratio = np.exp(rng.uniform(0.0, math.log(10.0), size=n))
    return profiles(a.tolist(), (a ** t * ratio).tolist(), t, class_kind)

def both_sides(calculator, kind, side, x, t, y):
    return calculator.bound(kind, side, x, t, y if kind is FormKind.DECOUPLED else None).value

@pytest.mark.parametrize("kind", [FormKind.ORDINARY, FormKind.DECOUPLED])
@pytest.mark.parametrize("side, t", [("sup", 2.5), ("sup", 3.5), ("sup", 5.0), ("inf", 3.0), ("inf", 4.5)])
@pytest.mark.parametrize("scale", [0.4, 2.5])
def test_bounds_scale_with_the_coordinates(calculator, kind, side, t, scale):
    for seed in range(3):
        x = seeded_bound_profiles(3, t, seed)
        y = seeded_bound_profiles(3, t, seed + 50)
        base = both_sides(calculator, kind, side, x, t, y)
        scaled = both_sides(calculator, kind, side, [p.scaled(scale) for p in x], t,
                            [p.scaled(scale) for p in y])
        assert scaled == pytest.approx(scale ** (2.0 * t) * base, rel=1e-10)

@pytest.mark.parametrize("kind", [FormKind.ORDINARY, FormKind.DECOUPLED])
@pytest.mark.parametrize("t", [2.5, 3.0, 3.5, 4.0, 5.0])
@pytest.mark.parametrize("class_kind", [ClassKind.M1, ClassKind.M2])
def test_sup_increases_in_b(calculator, kind, t, class_kind):
    for seed in range(3):
        x = seeded_bound_profiles(3, t, seed, class_kind)
        y = seeded_bound_profiles(3, t, seed + 50, class_kind)
        base = both_sides(calculator, kind, "sup", x, t, y)
        for k in range(3):
            bumped = list(x)
            bumped[k] = MomentProfile(x[k].a, 1.5 * x[k].b, t, class_kind)
            assert both_sides(calculator, kind, "sup", bumped, t, y) >= base * (1 - 1e-12)

@pytest.mark.parametrize("kind", [FormKind.ORDINARY, FormKind.DECOUPLED])
@pytest.mark.parametrize("t", [3.0, 3.5, 4.0, 6.0])
def test_sup_equals_inf_on_degenerate_profiles(calculator, kind, t):
    a = [1.0, 0.7, 1.4]
    x = profiles(a, [v ** t for v in a], t)
    y = profiles(a[::-1], [v ** t for v in a[::-1]], t)
    sup = both_sides(calculator, kind, "sup", x, t, y)
    inf = both_sides(calculator, kind, "inf", x, t, y)
    assert sup == pytest.approx(inf, rel=1e-12)
    assert sup > 0.0
