"""Benchmark problem generators: MaxCut on graphs and low-autocorrelation
binary sequences (LABS), plus the independent energy oracles used to
validate the spin-polynomial encodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .terms import Term, TermPolynomial


@dataclass(frozen=True)
class Graph:
    """Undirected graph with optional edge weights (default 1)."""

    n: int
    edges: tuple[tuple[int, int, float], ...]

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Sequence] = ()
    ) -> Graph:
        """Build from (u, v) or (u, v, weight) tuples; endpoints are reordered
        so that u < v and duplicate edges are rejected."""
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        normalized = []
        seen = set()
        for edge in edges:
            if len(edge) == 2:
                u, v = edge
                w = 1.0
            elif len(edge) == 3:
                u, v, w = edge
            else:
                raise ValueError(f"edge {edge!r} is not (u, v) or (u, v, weight)")
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not 0 <= u < n or not v < n:
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            normalized.append((u, v, float(w)))
        return cls(n, tuple(normalized))

    @property
    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)


def triangle_graph() -> Graph:
    return Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


def ring_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"ring graph needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def cubic_ring_graph(n: int) -> Graph:
    """3-regular graph on an even number of vertices: a ring plus diameters."""
    if n < 4 or n % 2:
        raise ValueError(f"cubic ring graph needs even n >= 4, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, i + n // 2) for i in range(n // 2)]
    return Graph.from_edges(n, edges)


def load_graph(path: str, n: int | None = None) -> Graph:
    """Read an edge list, one "u v [weight]" per line; blank lines and lines
    starting with '#' are skipped.  The vertex count defaults to the largest
    index seen plus one."""
    edges = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.split()
            if not fields or fields[0].startswith("#"):
                continue
            if len(fields) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 'u v [weight]'")
            try:
                u, v = int(fields[0]), int(fields[1])
                w = float(fields[2]) if len(fields) == 3 else 1.0
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
            edges.append((u, v, w))
    if n is None:
        if not edges:
            raise ValueError(f"{path}: empty edge list and no vertex count given")
        n = max(max(u, v) for u, v, _ in edges) + 1
    return Graph.from_edges(n, edges)


def maxcut_terms(graph: Graph) -> TermPolynomial:
    """Spin polynomial whose value at an assignment is minus the cut weight.

    Each edge contributes (w/2) * s_u * s_v and the constant offset is
    -sum(w)/2, so for unit weights f(s) == -cut(s) everywhere.
    """
    terms = [Term(w / 2.0, (u, v)) for u, v, w in graph.edges]
    if graph.edges:
        terms.append(Term(-graph.total_weight / 2.0))
    return TermPolynomial(graph.n, tuple(terms))


def cut_size(graph: Graph, k: int) -> int:
    """Number of edges crossing the partition encoded by index k."""
    if not 0 <= k < (1 << graph.n):
        raise ValueError(f"index {k} out of range for {graph.n} vertices")
    return sum(1 for u, v, _ in graph.edges if ((k >> u) ^ (k >> v)) & 1)


def labs_terms(n: int) -> TermPolynomial:
    """Spin polynomial for the LABS problem on n binary variables.

    The sidelobe energy E(s) = sum_t (sum_i s_i s_{i+t})^2 expands, up to an
    affine shift, into quartic terms of weight 2 and quadratic terms of
    weight 1; the exact relation 2*f(s) + n(n-1)/2 == E(s) is what the tests
    pin down.  Indices here are 0-based.
    """
    if n < 2:
        raise ValueError(f"LABS needs at least 2 variables, got {n}")
    terms = []
    for i in range(1, n - 2):
        for t in range(1, (n - i - 1) // 2 + 1):
            for k in range(t + 1, n - i - t + 1):
                terms.append(Term(2.0, (i - 1, i + t - 1, i + k - 1, i + k + t - 1)))
    for i in range(1, n - 1):
        for k in range(1, (n - i) // 2 + 1):
            terms.append(Term(1.0, (i - 1, i + 2 * k - 1)))
    return TermPolynomial(n, tuple(terms))


def labs_energy(k: int, n: int) -> int:
    """Exact sidelobe energy of the length-n sequence encoded by index k.

    Independent oracle: builds the +/-1 sequence and sums the squared
    aperiodic autocorrelations directly.
    """
    if not 0 <= k < (1 << n):
        raise ValueError(f"index {k} out of range for {n} variables")
    bits = (k >> np.arange(n)) & 1
    spins = 1 - 2 * bits
    energy = 0
    for t in range(1, n):
        c_t = int(np.dot(spins[: n - t], spins[t:]))
        energy += c_t * c_t
    return energy
