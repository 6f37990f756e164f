"""State-vector construction, diagonal phase application, and observables.

States are plain complex128 arrays of length 2^n; bit i of an array index is
qubit i.  All mutating operations work in place.
"""

from __future__ import annotations

from math import comb, sqrt

import numpy as np

from ._kernels import abs2_inplace, phase_multiply
from .terms import MAX_DENSE_QUBITS, _infer_n


def num_qubits(state: np.ndarray) -> int:
    """Qubit count of a state or cost vector (its length must be 2^n)."""
    return _infer_n(state.size)


def uniform_state(n: int) -> np.ndarray:
    """Equal superposition of all 2^n basis states."""
    if n < 1:
        raise ValueError(f"qubit count must be positive, got {n}")
    if n > MAX_DENSE_QUBITS:
        raise MemoryError(f"state vector for n={n} exceeds the dense-size limit")
    dim = 1 << n
    return np.full(dim, 1.0 / sqrt(dim), dtype=np.complex128)


def basis_state(n: int, k: int) -> np.ndarray:
    """Computational basis state |k>."""
    if not 0 <= k < (1 << n):
        raise ValueError(f"index {k} out of range for {n} qubits")
    state = np.zeros(1 << n, dtype=np.complex128)
    state[k] = 1.0
    return state


def hamming_weight_state(n: int, weight: int) -> np.ndarray:
    """Uniform superposition over all basis states with the given popcount.

    This is the natural initial state for the particle-number-preserving XY
    mixers, which never leave a fixed-weight sector.
    """
    if not 0 <= weight <= n:
        raise ValueError(f"weight {weight} out of range for {n} qubits")
    state = np.zeros(1 << n, dtype=np.complex128)
    indices = np.flatnonzero(
        np.bitwise_count(np.arange(1 << n, dtype=np.uint64)) == weight
    )
    state[indices] = 1.0 / sqrt(comb(n, weight))
    return state


def norm(state: np.ndarray) -> float:
    return float(np.linalg.norm(state))


def _check_match(state: np.ndarray, costs: np.ndarray) -> None:
    if state.size != costs.size:
        raise ValueError(
            f"state has {state.size} amplitudes but cost vector has "
            f"{costs.size} entries"
        )


def apply_phase(state: np.ndarray, costs: np.ndarray, gamma: float) -> None:
    """Multiply amplitude k by exp(-i * gamma * costs[k]), in place.

    A diagonal unitary: magnitudes are untouched, so this commutes with any
    observable built from the same diagonal.
    """
    _check_match(state, costs)
    if gamma == 0.0:
        return
    phase_multiply(state, costs, gamma)


def probabilities(state: np.ndarray, preserve_state: bool = True) -> np.ndarray:
    """Per-index probabilities |amplitude|^2.

    With preserve_state=False the squares are written over the state itself
    (destroying it) and a real view of that buffer is returned, avoiding a
    second full-size allocation.
    """
    if preserve_state:
        return np.abs(state) ** 2
    abs2_inplace(state)
    return state.real


def expectation(state: np.ndarray, costs: np.ndarray) -> float:
    """<state| diag(costs) |state> = sum_k costs[k] * |amplitude[k]|^2."""
    _check_match(state, costs)
    return float(np.dot(costs, probabilities(state)))


def overlap(state: np.ndarray, costs: np.ndarray, tol: float = 0.0) -> float:
    """Total probability on minimum-cost basis states.

    Ties for the minimum all count.  Costs from integer-weight problems are
    exact doubles, so the default compares with exact equality; `tol` widens
    the ground set to costs within `tol` of the minimum for float-weight
    problems.  The reduction is clamped into [0, 1]: summation may overshoot
    a unit norm by a few ulp.
    """
    _check_match(state, costs)
    ground = costs <= costs.min() + tol
    return min(max(float(np.sum(np.abs(state[ground]) ** 2)), 0.0), 1.0)


def save_state(state: np.ndarray, path: str) -> None:
    """Dump amplitudes as little-endian interleaved real/imag doubles."""
    np.ascontiguousarray(state, dtype="<c16").tofile(path)


def load_state(path: str) -> np.ndarray:
    """Read a state written by save_state."""
    state = np.fromfile(path, dtype="<c16").astype(np.complex128)
    _infer_n(state.size)
    return state
