"""Derivative-free local search over the 2p layer angles.

A hand-rolled Nelder-Mead simplex with the standard coefficients
(reflection 1, expansion 2, contraction 1/2, shrink 1/2).  The objective is
a black box over QaoaParams, every evaluation is recorded, and the search
never exceeds its evaluation budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .qaoa import QaoaParams

#: Offset, in radians, of each initial simplex vertex from the start point.
SIMPLEX_STEP = 0.05


@dataclass
class OptimizationReport:
    """Outcome of one local search: the best point seen and the full path."""

    best_params: QaoaParams
    best_value: float
    n_evaluations: int
    trajectory: list[tuple[QaoaParams, float]]

    def to_json_dict(self) -> dict:
        return {
            "best_gammas": list(self.best_params.gammas),
            "best_betas": list(self.best_params.betas),
            "best_value": self.best_value,
            "n_evaluations": self.n_evaluations,
            "trajectory": [
                {"gammas": list(p.gammas), "betas": list(p.betas), "value": v}
                for p, v in self.trajectory
            ],
        }


class _BudgetExhausted(Exception):
    pass


def optimize_parameters(
    objective: Callable[[QaoaParams], float],
    init: QaoaParams,
    budget: int = 500,
    tolerance: float = 1e-6,
) -> OptimizationReport:
    """Minimize the objective starting from init.

    Stops when the evaluation budget is spent, when the simplex diameter
    drops below `tolerance`, or when every vertex evaluates to exactly the
    same value (a flat landscape).  Raises if the objective returns a
    non-finite value.
    """
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}")
    trajectory: list[tuple[QaoaParams, float]] = []

    def evaluate(x: np.ndarray) -> float:
        if len(trajectory) >= budget:
            raise _BudgetExhausted
        params = QaoaParams.from_flat(x)
        value = float(objective(params))
        if not np.isfinite(value):
            raise ValueError(
                f"objective returned non-finite value {value} at "
                f"gammas={params.gammas}, betas={params.betas}"
            )
        trajectory.append((params, value))
        return value

    dim = 2 * init.p
    x0 = init.to_flat()
    try:
        if dim == 0:
            evaluate(x0)
        else:
            _nelder_mead(evaluate, x0, tolerance)
    except _BudgetExhausted:
        pass

    best_params, best_value = min(trajectory, key=lambda pv: pv[1])
    return OptimizationReport(best_params, best_value, len(trajectory), trajectory)


def _nelder_mead(
    evaluate: Callable[[np.ndarray], float], x0: np.ndarray, tolerance: float
) -> None:
    dim = x0.size
    vertices = [x0.copy()]
    for axis in range(dim):
        x = x0.copy()
        x[axis] += SIMPLEX_STEP
        vertices.append(x)
    values = [evaluate(x) for x in vertices]

    while True:
        order = np.argsort(values, kind="stable")
        vertices = [vertices[i] for i in order]
        values = [values[i] for i in order]

        if _diameter(vertices) < tolerance or values[-1] == values[0]:
            return

        centroid = np.mean(vertices[:-1], axis=0)
        worst = vertices[-1]
        reflected = centroid + (centroid - worst)
        f_reflected = evaluate(reflected)

        if values[0] <= f_reflected < values[-2]:
            vertices[-1], values[-1] = reflected, f_reflected
        elif f_reflected < values[0]:
            expanded = centroid + 2.0 * (reflected - centroid)
            f_expanded = evaluate(expanded)
            if f_expanded < f_reflected:
                vertices[-1], values[-1] = expanded, f_expanded
            else:
                vertices[-1], values[-1] = reflected, f_reflected
        elif f_reflected < values[-1]:
            contracted = centroid + 0.5 * (reflected - centroid)
            f_contracted = evaluate(contracted)
            if f_contracted <= f_reflected:
                vertices[-1], values[-1] = contracted, f_contracted
            else:
                _shrink(evaluate, vertices, values)
        else:
            contracted = centroid + 0.5 * (worst - centroid)
            f_contracted = evaluate(contracted)
            if f_contracted < values[-1]:
                vertices[-1], values[-1] = contracted, f_contracted
            else:
                _shrink(evaluate, vertices, values)


def _shrink(evaluate, vertices: list[np.ndarray], values: list[float]) -> None:
    best = vertices[0]
    for i in range(1, len(vertices)):
        vertices[i] = best + 0.5 * (vertices[i] - best)
        values[i] = evaluate(vertices[i])


def _diameter(vertices: list[np.ndarray]) -> float:
    return max(
        float(np.linalg.norm(a - b))
        for i, a in enumerate(vertices)
        for b in vertices[i + 1 :]
    )
