"""Cost functions as weighted spin products, and their precomputed diagonals.

A cost function over n binary variables is a sum of terms w * prod(s_i) with
spins s_i in {-1, +1}.  Bit i of a basis-state index k encodes spin
s_i = 1 - 2*bit_i(k), so evaluating a term at k reduces to a popcount parity.
Precomputing the value at every one of the 2^n indices yields the diagonal of
the cost operator, which later makes phase application and objective
evaluation a single element-wise pass.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import instrumentation
from ._kernels import accumulate_terms

#: Largest qubit count for which full 2^n vectors are allocated.
MAX_DENSE_QUBITS = 30


class CompactRangeError(ValueError):
    """Raised when costs cannot be packed losslessly into 16-bit integers."""


@dataclass(frozen=True)
class Term:
    """One weighted spin product: weight * prod_{i in support} s_i.

    An empty support denotes a constant offset.  Support indices are stored
    sorted; duplicates are rejected because a product over a set of spins
    never repeats an index.
    """

    weight: float
    support: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        support = tuple(sorted(int(i) for i in self.support))
        if len(set(support)) != len(support):
            raise ValueError(f"duplicate qubit index in support {self.support}")
        if support and support[0] < 0:
            raise ValueError(f"negative qubit index in support {self.support}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weight", float(self.weight))

    @property
    def mask(self) -> int:
        """Bit mask with bit i set for every i in the support."""
        m = 0
        for i in self.support:
            m |= 1 << i
        return m


@dataclass(frozen=True)
class TermPolynomial:
    """A cost function f(s) = sum_k w_k * prod_{i in t_k} s_i over n qubits."""

    n: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        object.__setattr__(self, "terms", tuple(self.terms))
        for term in self.terms:
            if term.support and term.support[-1] >= self.n:
                raise ValueError(
                    f"term support {term.support} does not fit in {self.n} qubits"
                )

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[float, Sequence[int]]]) -> TermPolynomial:
        """Build from (weight, indices) pairs; indices may come in any order."""
        return cls(n, tuple(Term(w, tuple(idx)) for w, idx in pairs))

    def evaluate(self, k: int) -> float:
        """Evaluate the polynomial at basis-state index k (the slow oracle)."""
        if not 0 <= k < (1 << self.n):
            raise ValueError(f"index {k} out of range for {self.n} qubits")
        return sum(evaluate_term(t, k) for t in self.terms)


def evaluate_term(term: Term, k: int, n: int | None = None) -> float:
    """Value of a single term at index k: weight * (-1)^popcount(k & mask)."""
    if k < 0 or (n is not None and k >= (1 << n)):
        raise ValueError(f"index {k} out of range")
    sign = -1.0 if (k & term.mask).bit_count() & 1 else 1.0
    return term.weight * sign


def evaluate_polynomial(poly: TermPolynomial, k: int) -> float:
    """Sum of all term values at index k; exact reference for the precompute."""
    return poly.evaluate(k)


def precompute_cost_vector(poly: TermPolynomial) -> np.ndarray:
    """Evaluate the polynomial at every index, returning the 2^n cost vector.

    Entry k holds f evaluated with s_i = 1 - 2*bit_i(k).  Each entry is
    accumulated independently over terms, so the pass parallelizes without
    any auxiliary full-size buffer.
    """
    if poly.n > MAX_DENSE_QUBITS:
        raise MemoryError(
            f"cost vector for n={poly.n} exceeds the dense-size limit "
            f"of {MAX_DENSE_QUBITS} qubits"
        )
    values = np.zeros(1 << poly.n)
    if poly.terms:
        weights = np.array([t.weight for t in poly.terms])
        masks = np.array([t.mask for t in poly.terms], dtype=np.int64)
        accumulate_terms(values, weights, masks)
    instrumentation.bump("precompute")
    return values


@dataclass(eq=False)
class CompactCostVector:
    """Cost diagonal packed as 16-bit levels: cost = scale * value + offset."""

    n: int
    values: np.ndarray  # uint16, length 2^n
    scale: float
    offset: float

    def decode(self) -> np.ndarray:
        """Expand back to the full double-precision cost vector."""
        return self.scale * self.values.astype(np.float64) + self.offset


def _common_scale(levels: np.ndarray) -> float:
    # Approximate positive GCD of the offsets from the minimum cost; the
    # caller verifies the resulting encoding round-trips exactly.
    if np.array_equal(levels, np.rint(levels)):
        return 1.0
    positive = np.unique(levels)
    positive = positive[positive > 0]
    if positive.size == 0:
        return 1.0
    tol = 1e-9 * positive[-1]
    g = float(positive[0])
    for v in positive[1:]:
        b = float(v)
        while b > tol:
            g, b = b, g % b
    return g


def compact_costs(costs: np.ndarray) -> CompactCostVector:
    """Pack a cost vector into 16-bit levels, or raise CompactRangeError.

    Succeeds only when the encoding is lossless: decoding must reproduce the
    input bit-for-bit.  Costs spanning 2^16 or more levels, or not lying on a
    common grid, are rejected and the caller keeps the full-precision vector.
    """
    costs = np.asarray(costs, dtype=np.float64)
    n = _infer_n(costs.size)
    offset = float(costs.min())
    levels = costs - offset
    scale = _common_scale(levels)
    quantized = np.rint(levels / scale)
    if quantized.max(initial=0.0) > np.iinfo(np.uint16).max:
        raise CompactRangeError(
            "costs span too many levels for 16-bit storage"
        )
    packed = CompactCostVector(n, quantized.astype(np.uint16), scale, offset)
    if not np.array_equal(packed.decode(), costs):
        raise CompactRangeError("costs are not representable on a 16-bit grid")
    return packed


def _infer_n(size: int) -> int:
    n = size.bit_length() - 1
    if size < 2 or (1 << n) != size:
        raise ValueError(f"array length {size} is not a power of two >= 2")
    return n


def save_terms(poly: TermPolynomial, path: str) -> None:
    """Write a polynomial as JSON: {"n": n, "terms": [[w, [i, ...]], ...]}."""
    payload = {
        "n": poly.n,
        "terms": [[t.weight, list(t.support)] for t in poly.terms],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_terms(path: str) -> TermPolynomial:
    """Read a polynomial from the JSON terms format."""
    with open(path) as fh:
        payload = json.load(fh)
    try:
        n = int(payload["n"])
        pairs = [(float(w), [int(i) for i in idx]) for w, idx in payload["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed terms file {path!r}: {exc}") from exc
    return TermPolynomial.from_pairs(n, pairs)
