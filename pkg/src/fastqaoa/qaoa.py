"""Layered evolution: alternating diagonal phase and mixing operators.

The expensive part of treating a cost function is evaluating it on all 2^n
assignments; that happens once, after which every layer is one element-wise
phase pass plus one mixer sweep, and the objective is a single inner
product.  `QaoaSimulator` does the precompute at construction; the
module-level helpers memoize it per polynomial so repeated objective calls
(for instance inside a parameter optimizer) never repeat it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .mixers import Mixer
from .statevec import (
    apply_phase,
    expectation,
    num_qubits,
    overlap,
    probabilities,
    uniform_state,
)
from .terms import TermPolynomial, precompute_cost_vector


@dataclass(frozen=True)
class QaoaParams:
    """Per-layer angle pairs: gammas scale the phase operator, betas the mixer."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas):
            raise ValueError(
                f"{len(self.gammas)} gammas but {len(self.betas)} betas"
            )

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def from_flat(cls, x: Sequence[float]) -> QaoaParams:
        """Unpack a flat vector [gammas..., betas...] of even length."""
        x = np.asarray(x, dtype=np.float64)
        if x.size % 2:
            raise ValueError(f"flat parameter vector has odd length {x.size}")
        p = x.size // 2
        return cls(tuple(x[:p]), tuple(x[p:]))

    def to_flat(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=np.float64)


@dataclass
class QaoaResult:
    """Final state plus the cost diagonal it was evolved under."""

    state: np.ndarray
    costs: np.ndarray


@lru_cache(maxsize=32)
def _cached_cost_vector(poly: TermPolynomial) -> np.ndarray:
    values = precompute_cost_vector(poly)
    values.setflags(write=False)
    return values


def resolve_costs(problem: "TermPolynomial | np.ndarray") -> tuple[np.ndarray, int]:
    """Cost diagonal and qubit count for a polynomial or a ready-made vector.

    Polynomials hit a process-wide memo, so the precompute runs once per
    distinct problem no matter how many simulations reuse it.
    """
    if isinstance(problem, TermPolynomial):
        return _cached_cost_vector(problem), problem.n
    costs = np.asarray(problem, dtype=np.float64)
    return costs, num_qubits(costs)


def _initial_state(n: int, mixer: Mixer, initial: np.ndarray | None) -> np.ndarray:
    if initial is not None:
        state = np.array(initial, dtype=np.complex128)
        if state.size != 1 << n:
            raise ValueError(
                f"initial state has {state.size} amplitudes, expected {1 << n}"
            )
        return state
    if mixer.preserves_hamming_weight:
        raise ValueError(
            "XY mixers act within a fixed-popcount sector; pass an initial "
            "state explicitly (see statevec.hamming_weight_state)"
        )
    return uniform_state(n)


class QaoaSimulator:
    """Simulator bound to one problem; the cost diagonal is computed once here.

    Pass either `terms` (a TermPolynomial) or `costs` (a ready 2^n vector).
    Results come back as QaoaResult; the get_* accessors extract plain
    numbers and arrays from them.
    """

    def __init__(
        self,
        n: int | None = None,
        *,
        terms: TermPolynomial | None = None,
        costs: np.ndarray | None = None,
        mixer: "str | Mixer" = "x",
    ) -> None:
        if (terms is None) == (costs is None):
            raise ValueError("pass exactly one of terms= or costs=")
        if terms is not None:
            self._costs = precompute_cost_vector(terms)
            self.n = terms.n
        else:
            self._costs = np.asarray(costs, dtype=np.float64)
            self.n = num_qubits(self._costs)
        if n is not None and n != self.n:
            raise ValueError(f"n={n} disagrees with problem size {self.n}")
        self.mixer = Mixer.parse(mixer)

    def get_cost_diagonal(self) -> np.ndarray:
        return self._costs

    def simulate_qaoa(
        self,
        gammas: Sequence[float],
        betas: Sequence[float],
        initial: np.ndarray | None = None,
    ) -> QaoaResult:
        """Run the layered evolution and return the final state."""
        params = QaoaParams(tuple(gammas), tuple(betas))
        state = _initial_state(self.n, self.mixer, initial)
        for gamma, beta in zip(params.gammas, params.betas):
            apply_phase(state, self._costs, gamma)
            self.mixer.apply_layer(state, beta)
        return QaoaResult(state, self._costs)

    def get_statevector(self, result: QaoaResult) -> np.ndarray:
        return result.state

    def get_probabilities(self, result: QaoaResult, preserve_state: bool = True) -> np.ndarray:
        return probabilities(result.state, preserve_state=preserve_state)

    def get_expectation(self, result: QaoaResult, costs: np.ndarray | None = None) -> float:
        return expectation(result.state, result.costs if costs is None else costs)

    def get_overlap(
        self,
        result: QaoaResult,
        costs: np.ndarray | None = None,
        tol: float = 0.0,
    ) -> float:
        return overlap(result.state, result.costs if costs is None else costs, tol=tol)


def simulate_qaoa(
    problem: "TermPolynomial | np.ndarray",
    params: QaoaParams,
    mixer: "str | Mixer" = "x",
    initial: np.ndarray | None = None,
) -> QaoaResult:
    """One-shot evolution; the cost diagonal is memoized per polynomial."""
    costs, n = resolve_costs(problem)
    mixer = Mixer.parse(mixer)
    state = _initial_state(n, mixer, initial)
    for gamma, beta in zip(params.gammas, params.betas):
        apply_phase(state, costs, gamma)
        mixer.apply_layer(state, beta)
    return QaoaResult(state, costs)


def qaoa_objective(
    problem: "TermPolynomial | np.ndarray",
    params: QaoaParams,
    mixer: "str | Mixer" = "x",
    initial: np.ndarray | None = None,
) -> float:
    """Expected cost of the evolved state; the quantity parameter tuning
    minimizes."""
    result = simulate_qaoa(problem, params, mixer=mixer, initial=initial)
    return expectation(result.state, result.costs)
