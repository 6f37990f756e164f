"""Sharded simulation across K = 2^k logical workers.

Worker r owns the contiguous slice of amplitudes whose top k index bits
equal r (the "global" qubits); the remaining n-k bits index within the
shard.  Phase application and cost precomputation touch only local data.
Mixing needs the single collective implemented here: each shard is viewed
as K subchunks of 2^(n-2k) amplitudes, and subchunk j of worker i swaps
with subchunk i of worker j.  On the state viewed as a tensor V[a, b, c]
(a = worker id, b = top k local bits, c = the rest) that is the
transposition V[a, b, c] -> V[b, a, c]; it is its own inverse, and it
requires 2k <= n so every subchunk holds at least one amplitude.

After one exchange the former global qubits sit at local positions q - k,
so a per-qubit transform runs as: local gates, exchange, remaining gates at
shifted positions, exchange back.

The exchange runs in-process with an explicit publish phase (every worker
posts copies of its subchunks), a barrier, and a consume phase; no worker
ever reads another worker's shard directly, so the same code maps onto a
process-per-worker transport.  Messages are raw little-endian complex
doubles, worker i sending its subchunk j to worker j, rounds in worker-id
order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import instrumentation
from ._kernels import phase_multiply, su2_on_pairs, swap_bits, xy_on_pairs
from .mixers import SU2, Mixer, complete_edges, ring_edges
from .qaoa import QaoaParams, QaoaResult, _initial_state, resolve_costs
from .statevec import probabilities


def _validate_split(n: int, K: int) -> int:
    k = K.bit_length() - 1
    if K < 1 or (1 << k) != K:
        raise ValueError(f"worker count {K} is not a power of two")
    if 2 * k > n:
        raise ValueError(
            f"{K} workers split {n} qubits into subchunks smaller than one "
            f"amplitude (need 2*log2(K) <= n)"
        )
    return k


@dataclass
class ShardedState:
    """State vector split across K = 2^k workers; worker r holds global
    indices r * 2^(n-k) .. (r+1) * 2^(n-k) - 1."""

    n: int
    k: int
    shards: list[np.ndarray]
    exchange_count: int = 0

    @property
    def K(self) -> int:
        return 1 << self.k


@dataclass
class ShardedCosts:
    """Cost diagonal sliced exactly like the state it phases."""

    n: int
    k: int
    shards: list[np.ndarray]


def scatter(state: np.ndarray, K: int) -> ShardedState:
    n = (state.size - 1).bit_length()
    if state.size != 1 << n:
        raise ValueError(f"state length {state.size} is not a power of two")
    k = _validate_split(n, K)
    size = 1 << (n - k)
    shards = [
        np.array(state[r * size : (r + 1) * size], dtype=np.complex128)
        for r in range(K)
    ]
    return ShardedState(n, k, shards)


def gather(sharded: ShardedState) -> np.ndarray:
    return np.concatenate(sharded.shards)


def shard_costs(costs: np.ndarray, K: int) -> ShardedCosts:
    costs = np.asarray(costs, dtype=np.float64)
    n = (costs.size - 1).bit_length()
    if costs.size != 1 << n:
        raise ValueError(f"cost length {costs.size} is not a power of two")
    k = _validate_split(n, K)
    size = 1 << (n - k)
    shards = [costs[r * size : (r + 1) * size].copy() for r in range(K)]
    return ShardedCosts(n, k, shards)


def all_to_all_exchange(sharded: ShardedState) -> None:
    """Swap subchunk j of worker i with subchunk i of worker j, in place.

    Publish: each worker copies out its K subchunks as outgoing messages.
    Barrier, then consume: each worker overwrites subchunk j with the
    message received from worker j.  Self-inverse.
    """
    K = sharded.K
    sub = 1 << (sharded.n - 2 * sharded.k)
    mailbox: list[list[np.ndarray]] = [[None] * K for _ in range(K)]  # type: ignore[list-item]
    for i in range(K):
        shard = sharded.shards[i]
        for j in range(K):
            mailbox[j][i] = shard[j * sub : (j + 1) * sub].copy()
    for i in range(K):
        shard = sharded.shards[i]
        for j in range(K):
            shard[j * sub : (j + 1) * sub] = mailbox[i][j]
    sharded.exchange_count += 1
    instrumentation.bump("exchange")


def apply_phase_distributed(
    sharded: ShardedState, costs: ShardedCosts, gamma: float
) -> None:
    """Element-wise phase on every shard; performs no communication."""
    if (costs.n, costs.k) != (sharded.n, sharded.k):
        raise ValueError("cost slicing does not match the state slicing")
    if gamma == 0.0:
        return
    for shard, cost_shard in zip(sharded.shards, costs.shards):
        phase_multiply(shard, cost_shard, gamma)


def apply_uniform_su2_distributed(sharded: ShardedState, us: Sequence[SU2]) -> None:
    """Per-qubit transform on a sharded state: local qubits first, then one
    exchange, the former global qubits at shifted positions, and a final
    exchange to restore the layout.  Exactly two exchanges."""
    n, k = sharded.n, sharded.k
    if len(us) != n:
        raise ValueError(f"expected {n} matrices, got {len(us)}")
    for q in range(n - k):
        u = us[q]
        for shard in sharded.shards:
            su2_on_pairs(shard, complex(u.a), complex(u.b), q)
    all_to_all_exchange(sharded)
    for q in range(n - k, n):
        u = us[q]
        for shard in sharded.shards:
            su2_on_pairs(shard, complex(u.a), complex(u.b), q - k)
    all_to_all_exchange(sharded)


def rx_layer_distributed(sharded: ShardedState, beta: float) -> None:
    apply_uniform_su2_distributed(sharded, [SU2.rx(beta)] * sharded.n)


def apply_xy_distributed(sharded: ShardedState, beta: float, i: int, j: int) -> None:
    """XY gate on a sharded state.

    Pairs of local qubits run directly.  A pair touching a global qubit is
    wrapped in an exchange: after it, qubit q >= n-k sits at local position
    q-k.  If the partner qubit lies in the subchunk-id range [n-2k, n-k) it
    would itself turn global, so it is first parked at local position 0 with
    a swap (possible only when n > 2k; at the 2k == n boundary such pairs
    have no local meeting point and are rejected).
    """
    n, k = sharded.n, sharded.k
    if i == j:
        raise ValueError(f"XY coupling needs two distinct qubits, got ({i}, {j})")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"pair ({i}, {j}) out of range for {n} qubits")
    lo, hi = min(i, j), max(i, j)
    n_local = n - k
    cos_b, sin_b = np.cos(beta), np.sin(beta)

    if hi < n_local:
        for shard in sharded.shards:
            xy_on_pairs(shard, cos_b, sin_b, lo, hi)
        return

    b_start = n - 2 * k
    parked = False
    if b_start <= lo < n_local:
        if b_start == 0:
            raise ValueError(
                f"pair ({i}, {j}) spans the subchunk-id and worker-id qubits; "
                f"with 2*log2(K) == n there is no local position to stage it "
                f"(use fewer workers)"
            )
        for shard in sharded.shards:
            swap_bits(shard, 0, lo)
        lo = 0
        parked = True
    pos_lo = lo - k if lo >= n_local else lo
    pos_hi = hi - k

    all_to_all_exchange(sharded)
    for shard in sharded.shards:
        xy_on_pairs(shard, cos_b, sin_b, pos_lo, pos_hi)
    all_to_all_exchange(sharded)

    if parked:
        for shard in sharded.shards:
            swap_bits(shard, 0, min(i, j))


def _xy_layer_distributed(
    sharded: ShardedState, beta: float, edges: list[tuple[int, int]]
) -> None:
    for i, j in edges:
        apply_xy_distributed(sharded, beta, i, j)


def _mixer_layer_distributed(sharded: ShardedState, mixer: Mixer, beta: float) -> None:
    if mixer.kind == "x":
        rx_layer_distributed(sharded, beta)
    elif mixer.kind == "xy-ring":
        _xy_layer_distributed(sharded, beta, ring_edges(sharded.n))
    elif mixer.kind == "xy-complete":
        _xy_layer_distributed(sharded, beta, complete_edges(sharded.n))
    else:
        apply_uniform_su2_distributed(sharded, mixer.su2_factory(beta))


def expectation_distributed(sharded: ShardedState, costs: ShardedCosts) -> float:
    """Sum of per-worker partial inner products <shard| diag(costs) |shard>."""
    if (costs.n, costs.k) != (sharded.n, sharded.k):
        raise ValueError("cost slicing does not match the state slicing")
    return float(
        sum(
            np.dot(cost_shard, probabilities(shard))
            for shard, cost_shard in zip(sharded.shards, costs.shards)
        )
    )


def overlap_distributed(
    sharded: ShardedState, costs: ShardedCosts, tol: float = 0.0
) -> float:
    """Probability mass on minimum-cost indices, reduced across workers and
    clamped into [0, 1] like the single-node version."""
    if (costs.n, costs.k) != (sharded.n, sharded.k):
        raise ValueError("cost slicing does not match the state slicing")
    cutoff = min(float(c.min()) for c in costs.shards) + tol
    total = sum(
        np.sum(np.abs(shard[cost_shard <= cutoff]) ** 2)
        for shard, cost_shard in zip(sharded.shards, costs.shards)
    )
    return min(max(float(total), 0.0), 1.0)


@dataclass
class DistributedResult:
    """Evolved sharded state plus the sliced cost diagonal."""

    sharded: ShardedState
    sharded_costs: ShardedCosts
    costs: np.ndarray = field(repr=False)

    @property
    def exchange_count(self) -> int:
        return self.sharded.exchange_count

    def statevector(self) -> np.ndarray:
        return gather(self.sharded)

    def expectation(self) -> float:
        return expectation_distributed(self.sharded, self.sharded_costs)

    def overlap(self, tol: float = 0.0) -> float:
        return overlap_distributed(self.sharded, self.sharded_costs, tol=tol)

    def to_result(self) -> QaoaResult:
        return QaoaResult(self.statevector(), self.costs)


def simulate_qaoa_distributed(
    problem,
    params: QaoaParams,
    K: int,
    mixer: "str | Mixer" = "x",
    initial: np.ndarray | None = None,
) -> DistributedResult:
    """Layered evolution on K logical workers; gathering the result matches
    the single-process simulation of the same problem."""
    costs, n = resolve_costs(problem)
    mixer = Mixer.parse(mixer)
    sharded = scatter(_initial_state(n, mixer, initial), K)
    sharded_costs = shard_costs(costs, K)
    for gamma, beta in zip(params.gammas, params.betas):
        apply_phase_distributed(sharded, sharded_costs, gamma)
        _mixer_layer_distributed(sharded, mixer, beta)
    return DistributedResult(sharded, sharded_costs, costs)
