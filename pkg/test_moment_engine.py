#!/usr/bin/env python3
"""
Tests for exact, reduced and Monte Carlo moments of linear and bilinear forms.
"""

import sys
import os
import math

import numpy as np
import pytest

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

from distributions.member_sampler import sample_member
from distributions.symmetric_dist import (
    ClassKind, MomentProfile, make_approx, make_extremal, make_rademacher, moments, point_mass
)
from moments.moment_engine import FormKind, FormSpec, MomentEngine
from moments.rademacher_reductions import (
    binomial_weights, lattice_chaos_decoupled, lattice_chaos_ordinary,
    rademacher_chaos_decoupled, rademacher_chaos_ordinary, rademacher_sum_moment
)
from utils.error_handler import EnumerationCapError

@pytest.fixture
def engine():
    return MomentEngine()

def rademachers(n):
    return (make_rademacher(1.0),) * n

def test_linear_moment_examples(engine):
    assert engine.moment_linear(rademachers(1), [1.0], 3.3) == 1.0
    assert engine.moment_linear(rademachers(3), [1.0, 1.0, 1.0], 4.0) == pytest.approx(21.0)
    assert engine.moment_linear(rademachers(2), [1.0, 1.0], 2.0) == pytest.approx(2.0)

def test_rademacher_sum_moment_examples():
    assert rademacher_sum_moment(1, 3.7) == 1.0
    assert rademacher_sum_moment(3, 4.0) == pytest.approx(21.0)
    assert rademacher_sum_moment(2, 2.0) == pytest.approx(2.0)
    assert rademacher_sum_moment(0, 3.0) == 0.0

def test_binomial_weights_sum_to_one():
    assert sum(binomial_weights(12)) == pytest.approx(1.0, abs=1e-15)

def test_linear_rademacher_mixed_coefficients(engine):
    assert engine.moment_linear_rademacher([2.0, 0.0, -2.0], 3.0) == pytest.approx(8.0 * 4.0)
    # |U1 + 2 U2|^2 has mean 1 + 4
    assert engine.moment_linear_rademacher([1.0, 2.0], 2.0) == pytest.approx(5.0)
    assert engine.moment_linear_rademacher([0.0, 0.0], 3.0) == 0.0

def test_bilinear_ordinary_examples(engine):
    assert engine.moment_bilinear(FormSpec(FormKind.ORDINARY, rademachers(2), 3.1)) == pytest.approx(1.0)
    extremal = make_extremal(2 ** -0.5, 0.5, 4.0)
    assert engine.moment_bilinear(FormSpec("ordinary", (extremal, extremal), 4.0)) == pytest.approx(0.25)
    assert engine.moment_bilinear(FormSpec(FormKind.ORDINARY, rademachers(3), 4.0)) == pytest.approx(21.0)

def test_bilinear_fewer_than_two_coordinates(engine):
    assert engine.moment_bilinear(FormSpec(FormKind.ORDINARY, rademachers(1), 3.0)) == 0.0

def test_rademacher_chaos_examples():
    assert rademacher_chaos_ordinary(2, 3.3) == pytest.approx(1.0)
    assert rademacher_chaos_ordinary(3, 2.0) == pytest.approx(3.0)
    assert rademacher_chaos_ordinary(3, 4.0) == pytest.approx(21.0)
    assert rademacher_chaos_decoupled(2, 2.0) == pytest.approx(2.0)
    assert rademacher_chaos_decoupled(2, 4.0) == pytest.approx(8.0)
    assert rademacher_chaos_decoupled(2, 3.0) == pytest.approx(4.0)

ORACLE_T = [2.5, 3.0, 3.5, 4.0, 5.0, 6.0]

def enumerated(compute):
    try:
        return compute()
    except EnumerationCapError as e:
        pytest.skip(f"enumeration exceeds the cap: {e}")

@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("t", ORACLE_T)
def test_sum_reduction_matches_enumeration(engine, n, t):
    exact = enumerated(lambda: engine.moment_linear(rademachers(n), [1.0] * n, t))
    assert rademacher_sum_moment(n, t) == pytest.approx(exact, rel=1e-10)

@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("t", ORACLE_T)
def test_ordinary_chaos_reduction_matches_enumeration(engine, n, t):
    exact = enumerated(lambda: engine.moment_bilinear(FormSpec(FormKind.ORDINARY, rademachers(n), t)))
    assert rademacher_chaos_ordinary(n, t) == pytest.approx(exact, rel=1e-10)

@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("t", ORACLE_T)
def test_decoupled_chaos_reduction_matches_enumeration(engine, n, t):
    spec = FormSpec(FormKind.DECOUPLED, rademachers(n), t, rademachers(n))
    exact = enumerated(lambda: engine.moment_bilinear(spec))
    assert rademacher_chaos_decoupled(n, t) == pytest.approx(exact, rel=1e-10)

def test_lattice_chaos_with_full_activity_is_rademacher():
    assert lattice_chaos_ordinary([1.0] * 4, 3.5) == pytest.approx(rademacher_chaos_ordinary(4, 3.5), rel=1e-12)
    assert lattice_chaos_decoupled([1.0] * 3, [1.0] * 3, 3.5) == pytest.approx(
        rademacher_chaos_decoupled(3, 3.5), rel=1e-12)

def test_three_point_chaos_matches_enumeration(engine):
    # all magnitudes (b/a^2)^{1/(t-2)} equal 2 for these profiles
    x = (make_extremal(1.0, 2.0, 3.0), make_extremal(2 ** -0.5, 1.0, 3.0), make_extremal(0.5, 0.5, 3.0))
    for kind, y in [(FormKind.ORDINARY, ()), (FormKind.DECOUPLED, x[::-1])]:
        spec = FormSpec(kind, x, 3.0, y)
        assert engine.three_point_chaos(spec) == pytest.approx(engine.moment_bilinear(spec), rel=1e-12)

def test_three_point_chaos_falls_back_for_mixed_magnitudes(engine):
    approx, _ = make_approx(1.0, 2.0, 3.0, 10)
    spec = FormSpec(FormKind.ORDINARY, (approx, make_rademacher(1.0), point_mass()), 3.0)
    assert engine.three_point_chaos(spec) == pytest.approx(engine.moment_bilinear(spec), rel=1e-12)

def test_rademacher_coefficient_moments(engine):
    assert engine.rademacher_chaos_moment([2.0, 2.0], 3.0) == pytest.approx(64.0)
    assert engine.rademacher_decoupled_moment([1.0, 1.0], [1.0, 1.0], 4.0) == pytest.approx(8.0)
    spec = FormSpec(FormKind.ORDINARY, (make_rademacher(1.0), make_rademacher(2.0), make_rademacher(0.5)), 3.0)
    assert engine.rademacher_chaos_moment([1.0, 2.0, 0.5], 3.0) == pytest.approx(engine.moment_bilinear(spec))

def test_enumeration_cap(engine):
    small = MomentEngine(enum_cap=100)
    with pytest.raises(EnumerationCapError):
        small.moment_bilinear(FormSpec(FormKind.ORDINARY, rademachers(7), 3.0))
    with pytest.raises(EnumerationCapError):
        small.moment_linear(rademachers(7), [1.0] * 7, 3.0)

def test_form_spec_validation():
    with pytest.raises(ValueError):
        FormSpec(FormKind.DECOUPLED, rademachers(2), 3.0, rademachers(1))
    with pytest.raises(ValueError):
        FormSpec(FormKind.ORDINARY, rademachers(2), 3.0, rademachers(2))
    assert FormSpec(FormKind.DECOUPLED, rademachers(2), 3.0, rademachers(2)).enumeration_size() == 16.0

def test_monte_carlo_degenerate_integrand(engine):
    estimate, std_error = engine.mc_moment_bilinear(FormSpec(FormKind.ORDINARY, rademachers(2), 4.0), 1000, seed=5)
    assert estimate == 1.0
    assert std_error == 0.0

@pytest.mark.parametrize("kind, y, exact", [
    (FormKind.ORDINARY, (), 21.0),
    (FormKind.DECOUPLED, rademachers(2), 8.0),
])
def test_monte_carlo_within_standard_errors(engine, kind, y, exact):
    x = rademachers(3) if kind is FormKind.ORDINARY else rademachers(2)
    estimate, std_error = engine.mc_moment_bilinear(FormSpec(kind, x, 4.0, y), 200_000, seed=7)
    assert abs(estimate - exact) <= 4.0 * std_error

def test_monte_carlo_is_seeded(engine):
    spec = FormSpec(FormKind.ORDINARY, rademachers(3), 3.0)
    assert engine.mc_moment_bilinear(spec, 500, seed=1) == engine.mc_moment_bilinear(spec, 500, seed=1)

def random_laws(count, t, seed):
    """Seeded random M1/M2 members with two or three magnitudes."""
    rng = np.random.default_rng(seed)
    laws = []
    for i in range(count):
        a = float(math.exp(rng.uniform(math.log(0.5), math.log(2.0))))
        ratio = float(math.exp(rng.uniform(0.0, math.log(10.0))))
        class_kind = ClassKind.M1 if rng.uniform() < 0.5 else ClassKind.M2
        profile = MomentProfile(a, a ** t * ratio, t, class_kind)
        laws.append(sample_member(profile, int(rng.integers(2, 4)), int(rng.integers(2**31))))
    return laws

@pytest.mark.parametrize("t", [2.5, 3.0, 4.0, 5.5])
def test_two_coordinate_ordinary_form_factorizes(engine, t):
    for seed in range(10):
        x1, x2 = random_laws(2, t, seed)
        exact = engine.moment_bilinear(FormSpec(FormKind.ORDINARY, (x1, x2), t))
        assert exact == pytest.approx(moments(x1, t)[1] * moments(x2, t)[1], rel=1e-12)

@pytest.mark.parametrize("kind", [FormKind.ORDINARY, FormKind.DECOUPLED])
@pytest.mark.parametrize("scale", [0.5, 3.0])
def test_bilinear_moment_is_homogeneous(engine, kind, scale):
    t = 3.5
    for seed in range(5):
        x = random_laws(3, t, seed)
        y = random_laws(3, t, seed + 100) if kind is FormKind.DECOUPLED else []
        base = engine.moment_bilinear(FormSpec(kind, x, t, y))
        scaled = engine.moment_bilinear(FormSpec(kind, [d.scaled(scale) for d in x], t,
                                                 [d.scaled(scale) for d in y]))
        assert scaled == pytest.approx(scale ** (2.0 * t) * base, rel=1e-10)

@pytest.mark.parametrize("kind", [FormKind.ORDINARY, FormKind.DECOUPLED])
def test_bilinear_moment_ignores_coordinate_order(engine, kind):
    t = 3.0
    rng = np.random.default_rng(17)
    for seed in range(5):
        x = random_laws(3, t, seed)
        y = random_laws(3, t, seed + 100) if kind is FormKind.DECOUPLED else []
        order = rng.permutation(3).tolist()
        base = engine.moment_bilinear(FormSpec(kind, x, t, y))
        permuted = engine.moment_bilinear(FormSpec(kind, [x[i] for i in order], t,
                                                   [y[i] for i in order] if y else []))
        assert permuted == pytest.approx(base, rel=1e-12)
