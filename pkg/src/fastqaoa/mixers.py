"""In-place mixing operators: single-qubit SU(2) rotations applied over all
index pairs, the uniform per-qubit transform built from them, and
particle-number-preserving XY gates on ring or complete couplings.

Gate orders are part of the public contract:

* uniform transforms sweep qubits 0, 1, ..., n-1 in ascending order;
* the XY ring layer applies pairs (0,1), (2,3), ... then (1,2), (3,4), ...
  and finally the wrap pair (n-1, 0) (omitted for n=2, where the ring
  degenerates to a single pair);
* the XY complete layer applies all pairs (i, j), i < j, in lexicographic
  order.

Sequential XY gates on overlapping pairs do not commute, so changing these
orders changes the produced state.
"""

from __future__ import annotations

from cmath import cos, sin
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._kernels import su2_on_pairs, xy_on_pairs
from .statevec import num_qubits


@dataclass(frozen=True)
class SU2:
    """Special-unitary 2x2 matrix [[a, -conj(b)], [b, conj(a)]]."""

    a: complex
    b: complex

    def __post_init__(self) -> None:
        det = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(det - 1.0) > 1e-12:
            raise ValueError(f"matrix is not special unitary: |a|^2+|b|^2 = {det}")

    @classmethod
    def identity(cls) -> SU2:
        return cls(1.0 + 0j, 0j)

    @classmethod
    def rx(cls, beta: float) -> SU2:
        """exp(-i * beta * X) = cos(beta) I - i sin(beta) X."""
        return cls(cos(beta), -1j * sin(beta))

    def dagger(self) -> SU2:
        return SU2(self.a.conjugate(), -self.b)

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.a, -self.b.conjugate()], [self.b, self.a.conjugate()]],
            dtype=np.complex128,
        )


def apply_su2(state: np.ndarray, u: SU2, q: int) -> None:
    """Rotate qubit q by u, in place.

    Every amplitude pair differing only in bit q is updated simultaneously
    (old values on the right-hand side) through two scalar temporaries; no
    full-size scratch buffer is allocated.
    """
    n = num_qubits(state)
    if not 0 <= q < n:
        raise ValueError(f"qubit {q} out of range for {n} qubits")
    su2_on_pairs(state, complex(u.a), complex(u.b), q)


def apply_uniform_su2(state: np.ndarray, us: Sequence[SU2]) -> None:
    """Apply the tensor product u[n-1] x ... x u[0], with u[q] on qubit q.

    Single-qubit rotations on distinct qubits commute, so the ascending
    sweep equals the full tensor-product matrix.
    """
    n = num_qubits(state)
    if len(us) != n:
        raise ValueError(f"expected {n} matrices, got {len(us)}")
    for q, u in enumerate(us):
        su2_on_pairs(state, complex(u.a), complex(u.b), q)


def rx_layer(state: np.ndarray, beta: float) -> None:
    """exp(-i * beta * sum_q X_q): the transverse-field mixing layer."""
    u = SU2.rx(beta)
    for q in range(num_qubits(state)):
        su2_on_pairs(state, u.a, u.b, q)


def apply_xy(state: np.ndarray, beta: float, i: int, j: int) -> None:
    """exp(-i * beta * (X_i X_j + Y_i Y_j) / 2), in place.

    Rotates the {|01>, |10>} sector of the qubit pair by
    [[cos b, -i sin b], [-i sin b, cos b]] and leaves |00> and |11> alone,
    so the total number of 1-bits is conserved.
    """
    n = num_qubits(state)
    if i == j:
        raise ValueError(f"XY coupling needs two distinct qubits, got ({i}, {j})")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"pair ({i}, {j}) out of range for {n} qubits")
    xy_on_pairs(state, np.cos(beta), np.sin(beta), min(i, j), max(i, j))


def ring_edges(n: int) -> list[tuple[int, int]]:
    """Ring coupling order: even pairs, odd pairs, then the wrap edge."""
    if n < 2:
        raise ValueError(f"ring mixer needs at least 2 qubits, got {n}")
    if n == 2:
        return [(0, 1)]
    edges = [(q, q + 1) for q in range(0, n - 1, 2)]
    edges += [(q, q + 1) for q in range(1, n - 1, 2)]
    edges.append((n - 1, 0))
    return edges


def complete_edges(n: int) -> list[tuple[int, int]]:
    """All-to-all coupling order: (i, j) with i < j, lexicographic."""
    if n < 2:
        raise ValueError(f"complete mixer needs at least 2 qubits, got {n}")
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def xy_ring_layer(state: np.ndarray, beta: float) -> None:
    """XY gates over the ring edges, applied sequentially in document order."""
    for i, j in ring_edges(num_qubits(state)):
        apply_xy(state, beta, i, j)


def xy_complete_layer(state: np.ndarray, beta: float) -> None:
    """XY gates over all pairs, applied sequentially in lexicographic order."""
    for i, j in complete_edges(num_qubits(state)):
        apply_xy(state, beta, i, j)


class Mixer:
    """Per-layer mixing operator selected by kind.

    Kinds: "x" (transverse field), "xy-ring", "xy-complete", or "custom"
    with a factory mapping the layer angle to one SU(2) per qubit (this is
    how a plain real rotation, a = cos b and b = sin b, stays reachable).
    """

    KINDS = ("x", "xy-ring", "xy-complete", "custom")

    def __init__(
        self,
        kind: str,
        su2_factory: Callable[[float], Sequence[SU2]] | None = None,
    ) -> None:
        if kind not in self.KINDS:
            raise ValueError(f"unknown mixer kind {kind!r}; expected one of {self.KINDS}")
        if (kind == "custom") != (su2_factory is not None):
            raise ValueError("custom mixers take a factory; named mixers do not")
        self.kind = kind
        self.su2_factory = su2_factory

    @classmethod
    def x(cls) -> Mixer:
        return cls("x")

    @classmethod
    def xy_ring(cls) -> Mixer:
        return cls("xy-ring")

    @classmethod
    def xy_complete(cls) -> Mixer:
        return cls("xy-complete")

    @classmethod
    def custom(cls, su2_factory: Callable[[float], Sequence[SU2]]) -> Mixer:
        return cls("custom", su2_factory)

    @classmethod
    def parse(cls, value: "str | Mixer") -> Mixer:
        if isinstance(value, Mixer):
            return value
        return cls(value)

    @property
    def preserves_hamming_weight(self) -> bool:
        return self.kind in ("xy-ring", "xy-complete")

    def apply_layer(self, state: np.ndarray, beta: float) -> None:
        if self.kind == "x":
            rx_layer(state, beta)
        elif self.kind == "xy-ring":
            xy_ring_layer(state, beta)
        elif self.kind == "xy-complete":
            xy_complete_layer(state, beta)
        else:
            apply_uniform_su2(state, self.su2_factory(beta))

    def __repr__(self) -> str:
        return f"Mixer({self.kind!r})"
