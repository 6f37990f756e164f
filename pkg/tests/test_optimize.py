import json

import numpy as np
import pytest

from fastqaoa.optimize import OptimizationReport, optimize_parameters
from fastqaoa.problems import maxcut_terms, triangle_graph
from fastqaoa.qaoa import QaoaParams, qaoa_objective


def quadratic(params: QaoaParams) -> float:
    return (params.gammas[0] - 1.0) ** 2 + (params.betas[0] - 2.0) ** 2


def test_quadratic_converges_to_analytic_minimum():
    report = optimize_parameters(quadratic, QaoaParams((0.0,), (0.0,)), budget=500)
    assert abs(report.best_params.gammas[0] - 1.0) < 1e-3
    assert abs(report.best_params.betas[0] - 2.0) < 1e-3
    assert report.n_evaluations <= 500


def test_constant_objective_stops_early():
    p = 2
    report = optimize_parameters(
        lambda params: 4.2, QaoaParams((0.0,) * p, (0.0,) * p), budget=500
    )
    assert report.best_value == 4.2
    assert report.best_params == QaoaParams((0.0,) * p, (0.0,) * p)
    # simplex setup costs 2p+1 evaluations; at most 2p+2 more before the
    # flat landscape is detected
    assert report.n_evaluations <= (2 * p + 1) + (2 * p + 2)


def test_best_value_is_min_over_trajectory():
    report = optimize_parameters(quadratic, QaoaParams((0.3,), (0.1,)), budget=120)
    values = [v for _, v in report.trajectory]
    assert report.best_value == min(values)
    # running best never increases
    running = np.minimum.accumulate(values)
    assert all(b <= a for a, b in zip(running, running[1:]))


def test_budget_is_a_hard_cap():
    calls = 0

    def counting(params):
        nonlocal calls
        calls += 1
        return float(np.sin(10 * params.gammas[0]) + params.betas[0] ** 2)

    report = optimize_parameters(counting, QaoaParams((0.5,), (0.5,)), budget=23)
    assert calls == report.n_evaluations <= 23


def test_objective_improves_on_qaoa_landscape():
    poly = maxcut_terms(triangle_graph())

    def objective(params):
        return qaoa_objective(poly, params)

    init = QaoaParams((0.1,), (0.1,))
    report = optimize_parameters(objective, init, budget=200)
    assert report.best_value <= objective(init)
    assert report.best_value < -1.5  # beats the zero-angle plateau


def test_whole_run_precomputes_once():
    from fastqaoa import instrumentation
    from fastqaoa.qaoa import QaoaSimulator
    from fastqaoa.terms import TermPolynomial

    poly = TermPolynomial.from_pairs(6, [(0.8125, (0, 2)), (-1.4375, (1, 4, 5))])
    instrumentation.reset()
    sim = QaoaSimulator(terms=poly)

    def objective(params):
        result = sim.simulate_qaoa(params.gammas, params.betas)
        return sim.get_expectation(result)

    optimize_parameters(objective, QaoaParams((0.1,), (0.1,)), budget=60)
    assert instrumentation.get("precompute") == 1


def test_non_finite_objective_aborts():
    def bad(params):
        return float("nan")

    with pytest.raises(ValueError, match="non-finite"):
        optimize_parameters(bad, QaoaParams((0.0,), (0.0,)), budget=50)


def test_zero_layer_parameters():
    report = optimize_parameters(lambda p: 7.0, QaoaParams((), ()), budget=10)
    assert report.n_evaluations == 1
    assert report.best_value == 7.0


def test_budget_validation():
    with pytest.raises(ValueError, match="budget"):
        optimize_parameters(quadratic, QaoaParams((0.0,), (0.0,)), budget=0)


def test_deterministic_given_init():
    a = optimize_parameters(quadratic, QaoaParams((0.2,), (0.4,)), budget=80)
    b = optimize_parameters(quadratic, QaoaParams((0.2,), (0.4,)), budget=80)
    assert a.trajectory == b.trajectory


def test_report_serializes_to_json():
    report = optimize_parameters(quadratic, QaoaParams((0.0,), (0.0,)), budget=40)
    payload = json.loads(json.dumps(report.to_json_dict()))
    assert payload["best_value"] == report.best_value
    assert len(payload["trajectory"]) == report.n_evaluations
    assert isinstance(report, OptimizationReport)
