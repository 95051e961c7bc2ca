"""Simplex minimization, shell rebalancing, and the threaded-pair family."""

import math

import numpy as np
import pytest

from ropebound.construct import (
    Shell,
    TorusSpec,
    _hole_radius_required,
    analytic_length,
    build_increment_spec,
    build_planar_link,
)
from ropebound.curves import sample_planar_curve
from ropebound.optimize import (
    OptimizationProblem,
    minimize_params,
    nelder_mead,
    normalized_ropelength,
    perpendicular_variant,
    reverse_jenga,
    toroidal_pair,
    toroidal_pair_problem,
)

C_PAIR = (2 * 7 * 6 + 2 * 49) ** 0.75  # 14 components pairwise linked


def test_nelder_mead_quadratic():
    res = nelder_mead(
        lambda v: (v[0] - 0.3) ** 2 + (v[1] + 0.1) ** 2,
        (0.0, 0.0),
        ((-1.0, 1.0), (-1.0, 1.0)),
    )
    assert res["best_value"] == pytest.approx(2.560115364412463e-09, rel=1e-12)
    assert res["evaluations"] == 57
    assert res["best_params"] == pytest.approx((0.3, -0.1), abs=1e-3)


def test_nelder_mead_respects_bounds():
    res = nelder_mead(lambda v: (v[0] - 5.0) ** 2, (0.0,), ((-1.0, 1.0),))
    assert res["best_params"][0] == pytest.approx(1.0, abs=1e-5)


def test_nelder_mead_all_infeasible_raises():
    with pytest.raises(ValueError):
        nelder_mead(lambda v: np.inf, (0.5,), ((0.0, 1.0),))


def test_normalized_ropelength_scale_invariant():
    link = build_planar_link(2, "circles", {"rho": 0.5, "psi": 0.25 * math.pi},
                             n_points=200)
    base = normalized_ropelength(link)
    assert np.isfinite(base)
    assert normalized_ropelength(link.scaled(3.0)) == pytest.approx(base, rel=1e-9)


def test_normalized_ropelength_infeasible_is_inf():
    circle = sample_planar_curve("circle", {"radius": 2.0}, n_points=100)
    assert normalized_ropelength([circle, circle]) == np.inf


def test_problem_validation():
    with pytest.raises(ValueError):
        OptimizationProblem("bogus", q=3)
    with pytest.raises(ValueError):
        OptimizationProblem("circles", q=3, initial_params=(0.5,))
    with pytest.raises(ValueError):
        OptimizationProblem("circles", q=3, param_bounds=((0.1, 1.0),))
    with pytest.raises(ValueError):
        OptimizationProblem("circles", q=3, initial_params=(9.0, 0.5))
    with pytest.raises(ValueError):
        minimize_params(OptimizationProblem("circles", q=2, n_points=50),
                        restarts=0)


def test_minimize_params_never_worse_and_deterministic():
    problem = OptimizationProblem("circles", q=2, n_points=60)
    initial = problem.objective(problem.initial_params)
    first = minimize_params(problem, restarts=2, maxfev=40)
    assert first["best_value"] <= initial
    second = minimize_params(problem, restarts=2, maxfev=40)
    assert second["best_value"] == first["best_value"]
    assert np.array_equal(second["best_params"], first["best_params"])
    assert second["evaluations"] == first["evaluations"]


def _ninety_percent_spec():
    radii = [2.0, 4.0, 6.0]
    counts = [max(1, round(0.9 * 4 * i)) for i in (1, 2, 3)]
    hole = max(_hole_radius_required(r, n) for r, n in zip(radii, counts))
    shells = [Shell(r, n) for r, n in zip(radii, counts)]
    return TorusSpec(shells, has_core=True, major_radius=hole + 6.0)


def test_reverse_jenga_rebalances_underfilled_shells():
    spec = _ninety_percent_spec()
    assert [s.count for s in spec.shells] == [4, 7, 11]
    assert analytic_length(spec) == pytest.approx(1657.200388888699, rel=1e-12)
    better = reverse_jenga(spec)
    assert [s.count for s in better.shells] == [5, 8, 9]
    assert better.q == spec.q == 23
    assert analytic_length(better) == pytest.approx(1519.6931123770364, rel=1e-12)
    # a rebalanced spec is a fixed point
    again = reverse_jenga(better)
    assert [s.count for s in again.shells] == [5, 8, 9]
    assert analytic_length(again) == pytest.approx(analytic_length(better),
                                                   rel=1e-12)


def test_reverse_jenga_improves_full_increment_build():
    spec = build_increment_spec(3, 4)
    assert [s.count for s in spec.shells] == [4, 8, 12]
    assert analytic_length(spec) == pytest.approx(1892.9058936420001, rel=1e-12)
    better = reverse_jenga(spec)
    assert [s.count for s in better.shells] == [5, 9, 10]
    assert analytic_length(better) == pytest.approx(1769.0545677544571, rel=1e-12)
    assert better.q == spec.q


def test_toroidal_pair_structure():
    config = toroidal_pair(6.4, n_points=120)
    assert config.n_components == 14
    assert config.crossing_number == 182
    assert config.metadata["family"] == "toroidal_pair"
    assert config.metadata["separation"] == pytest.approx(6.4)


def test_toroidal_pair_problem_objective():
    problem = toroidal_pair_problem(n_points=420)
    assert problem.q == 14
    value = problem.objective(problem.initial_params)
    assert value == pytest.approx(604.330419676429, rel=1e-12)
    assert value / C_PAIR == pytest.approx(12.196098255847597, rel=1e-12)


def test_toroidal_pair_tuned_parameters_beat_twelve():
    tuned = [6.228759242349103, 6.240350485264015,
             0.353250252153055, 2.1811090743064794]
    config = toroidal_pair(tuned[0], tuned[1], tuned[2],
                           shell_radius=tuned[3], n_points=1000)
    alpha = normalized_ropelength(config) / C_PAIR
    assert alpha == pytest.approx(11.754848052775852, rel=1e-9)
    assert alpha < 12.0


def test_perpendicular_variant_smoke():
    spec = build_increment_spec(1, 4)
    config, value = perpendicular_variant(spec, n_points=300)
    assert config.n_components == spec.q
    assert config.crossing_number == spec.crossing_number()
    assert np.isfinite(value) and value > 0.0
