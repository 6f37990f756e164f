"""Slow, transparent dense-matrix implementations used to validate the fast
paths.  Everything here builds explicit 2^n x 2^n operators, so it is
restricted to small qubit counts and lives test-side only.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from typing import Sequence

import numpy as np

from .mixers import SU2, Mixer, complete_edges, ring_edges
from .qaoa import QaoaParams, resolve_costs
from .statevec import uniform_state
from .terms import TermPolynomial

#: Dense operators above this qubit count are refused.
MAX_DENSE_REFERENCE_QUBITS = 12


def _check_size(n: int) -> None:
    if n > MAX_DENSE_REFERENCE_QUBITS:
        raise MemoryError(
            f"dense reference limited to {MAX_DENSE_REFERENCE_QUBITS} qubits, got {n}"
        )


@lru_cache(maxsize=None)
def _hadamard(n: int) -> np.ndarray:
    h1 = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    h = np.array([[1.0]])
    for _ in range(n):
        h = np.kron(h, h1)
    return h


def dense_x_mixer(n: int, beta: float) -> np.ndarray:
    """exp(-i beta sum_q X_q) as a full matrix.

    Diagonalized in the Hadamard basis: X = H Z H, so the exponent becomes a
    diagonal of exp(-i beta (n - 2 popcount)) between two Hadamard layers.
    """
    _check_size(n)
    h = _hadamard(n)
    weights = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
    phases = np.exp(-1j * beta * (n - 2 * weights))
    return h @ (phases[:, None] * h)


def dense_uniform_su2(us: Sequence[SU2]) -> np.ndarray:
    """Kronecker product u[n-1] x ... x u[0] (qubit 0 on the lowest bit)."""
    _check_size(len(us))
    return reduce(np.kron, [u.matrix() for u in reversed(us)])


def dense_xy_gate(n: int, beta: float, i: int, j: int) -> np.ndarray:
    """exp(-i beta (X_i X_j + Y_i Y_j)/2) as a full matrix, from the closed
    form of its matrix elements (cos on the diagonal of the odd sector,
    -i sin between the two flipped states)."""
    _check_size(n)
    dim = 1 << n
    flip = (1 << i) | (1 << j)
    gate = np.eye(dim, dtype=np.complex128)
    for x in range(dim):
        if ((x >> i) ^ (x >> j)) & 1:
            gate[x, x] = np.cos(beta)
            gate[x ^ flip, x] = -1j * np.sin(beta)
    return gate


def dense_mixer_matrix(n: int, beta: float, mixer: "str | Mixer") -> np.ndarray:
    """Full matrix of one mixing layer, honoring the documented gate orders."""
    mixer = Mixer.parse(mixer)
    if mixer.kind == "x":
        return dense_x_mixer(n, beta)
    if mixer.kind == "custom":
        return dense_uniform_su2(mixer.su2_factory(beta))
    edges = ring_edges(n) if mixer.kind == "xy-ring" else complete_edges(n)
    matrix = np.eye(1 << n, dtype=np.complex128)
    for i, j in edges:
        matrix = dense_xy_gate(n, beta, i, j) @ matrix
    return matrix


def dense_qaoa_reference(
    problem: "TermPolynomial | np.ndarray",
    params: QaoaParams,
    mixer: "str | Mixer" = "x",
    initial: np.ndarray | None = None,
) -> np.ndarray:
    """Evolve the state with explicit dense operators, layer by layer.

    The transverse-field mixer is applied through its Hadamard-basis
    diagonalization as three dense matrix-vector products (same operator as
    dense_x_mixer, without materializing the 2^n x 2^n product); the other
    mixers multiply their full layer matrices.
    """
    costs, n = resolve_costs(problem)
    _check_size(n)
    mixer = Mixer.parse(mixer)
    state = uniform_state(n) if initial is None else np.array(initial, dtype=np.complex128)
    if mixer.kind == "x":
        h = _hadamard(n)
        weights = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
    for gamma, beta in zip(params.gammas, params.betas):
        state = np.exp(-1j * gamma * costs) * state
        if mixer.kind == "x":
            state = h @ (np.exp(-1j * beta * (n - 2 * weights)) * (h @ state))
        else:
            state = dense_mixer_matrix(n, beta, mixer) @ state
    return state


def brute_force_minimum(poly: TermPolynomial) -> tuple[float, list[int]]:
    """Exact minimum cost and every index achieving it, by exhaustive
    per-index evaluation (independent of the vectorized precompute)."""
    if poly.n > 24:
        raise MemoryError(f"exhaustive scan limited to 24 qubits, got {poly.n}")
    best = None
    argmin: list[int] = []
    for k in range(1 << poly.n):
        value = poly.evaluate(k)
        if best is None or value < best:
            best = value
            argmin = [k]
        elif value == best:
            argmin.append(k)
    return float(best), argmin
