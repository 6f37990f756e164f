"""QAOA state-vector simulation built around a precomputed cost diagonal.

The cost function is evaluated once on every basis state; afterwards each
phase layer is a single element-wise multiplication, the objective is one
inner product, and mixing runs as in-place per-qubit (or per-pair, for XY)
transforms.  A sharded multi-worker mode reproduces the same evolution with
an all-to-all subchunk exchange as its only communication step.
"""

from .mixers import SU2, Mixer
from .problems import (
    Graph,
    cubic_ring_graph,
    cut_size,
    labs_energy,
    labs_terms,
    maxcut_terms,
    triangle_graph,
)
from .qaoa import QaoaParams, QaoaResult, QaoaSimulator, qaoa_objective, simulate_qaoa
from .statevec import (
    apply_phase,
    expectation,
    hamming_weight_state,
    overlap,
    probabilities,
    uniform_state,
)
from .terms import (
    CompactCostVector,
    CompactRangeError,
    Term,
    TermPolynomial,
    compact_costs,
    precompute_cost_vector,
)

__version__ = "0.1.0"

__all__ = [
    "SU2",
    "Mixer",
    "Graph",
    "cubic_ring_graph",
    "cut_size",
    "labs_energy",
    "labs_terms",
    "maxcut_terms",
    "triangle_graph",
    "QaoaParams",
    "QaoaResult",
    "QaoaSimulator",
    "qaoa_objective",
    "simulate_qaoa",
    "apply_phase",
    "expectation",
    "hamming_weight_state",
    "overlap",
    "probabilities",
    "uniform_state",
    "CompactCostVector",
    "CompactRangeError",
    "Term",
    "TermPolynomial",
    "compact_costs",
    "precompute_cost_vector",
    "__version__",
]
