"""Compiled inner loops for state-vector updates and cost precomputation.

Every kernel mutates its first array argument in place.  None of them
allocates memory proportional to the array size: pair updates go through two
scalar scratch values, matching the in-place contract of the fast transforms.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True, parallel=True)
def su2_on_pairs(psi, a, b, q):
    # Rotate every amplitude pair (l, l | 1<<q) by [[a, -b*], [b, a*]].
    ac = np.conj(a)
    bc = np.conj(b)
    bit = np.int64(1) << q
    low = bit - 1
    for g in prange(psi.size >> 1):
        l0 = ((g >> q) << (q + 1)) | (g & low)
        l1 = l0 | bit
        x0 = psi[l0]
        x1 = psi[l1]
        psi[l0] = a * x0 - bc * x1
        psi[l1] = b * x0 + ac * x1


@njit(cache=True, parallel=True)
def xy_on_pairs(psi, cos_b, sin_b, p_lo, p_hi):
    # Rotate the {|01>, |10>} subspace of bits (p_hi, p_lo) by
    # [[cos, -i sin], [-i sin, cos]]; the |00> and |11> sectors are untouched.
    c = cos_b + 0j
    ms = -1j * sin_b
    bit_lo = np.int64(1) << p_lo
    bit_hi = np.int64(1) << p_hi
    m_lo = bit_lo - 1
    m_hi = bit_hi - 1
    for g in prange(psi.size >> 2):
        t = ((g >> p_lo) << (p_lo + 1)) | (g & m_lo)
        base = ((t >> p_hi) << (p_hi + 1)) | (t & m_hi)
        l_lo = base | bit_lo
        l_hi = base | bit_hi
        x_lo = psi[l_lo]
        x_hi = psi[l_hi]
        psi[l_lo] = c * x_lo + ms * x_hi
        psi[l_hi] = ms * x_lo + c * x_hi


@njit(cache=True, parallel=True)
def swap_bits(psi, p_lo, p_hi):
    # Exchange amplitudes whose indices differ only in bits p_lo and p_hi.
    bit_lo = np.int64(1) << p_lo
    bit_hi = np.int64(1) << p_hi
    m_lo = bit_lo - 1
    m_hi = bit_hi - 1
    for g in prange(psi.size >> 2):
        t = ((g >> p_lo) << (p_lo + 1)) | (g & m_lo)
        base = ((t >> p_hi) << (p_hi + 1)) | (t & m_hi)
        l_lo = base | bit_lo
        l_hi = base | bit_hi
        tmp = psi[l_lo]
        psi[l_lo] = psi[l_hi]
        psi[l_hi] = tmp


@njit(cache=True, parallel=True)
def phase_multiply(psi, costs, gamma):
    # psi[k] *= exp(-i * gamma * costs[k])
    for k in prange(psi.size):
        angle = gamma * costs[k]
        psi[k] = psi[k] * complex(np.cos(angle), -np.sin(angle))


@njit(cache=True, parallel=True)
def accumulate_terms(out, weights, masks):
    # out[k] += sum_t weights[t] * (-1)^popcount(k & masks[t]);
    # each element is written by exactly one iteration, term order is fixed.
    for k in prange(out.size):
        acc = 0.0
        for t in range(weights.size):
            x = k & masks[t]
            x ^= x >> 32
            x ^= x >> 16
            x ^= x >> 8
            x ^= x >> 4
            x ^= x >> 2
            x ^= x >> 1
            if x & 1:
                acc -= weights[t]
            else:
                acc += weights[t]
        out[k] += acc


@njit(cache=True, parallel=True)
def abs2_inplace(psi):
    # Overwrite each amplitude with |amplitude|^2 (stored in the real part).
    for k in prange(psi.size):
        x = psi[k]
        psi[k] = complex(x.real * x.real + x.imag * x.imag, 0.0)


def warm_up() -> None:
    """Force JIT compilation of all kernels on tiny inputs.

    Call once before timing anything; otherwise the first invocation pays
    the compilation cost.
    """
    psi = np.full(4, 0.5, dtype=np.complex128)
    costs = np.zeros(4)
    su2_on_pairs(psi, 1.0 + 0j, 0j, 0)
    xy_on_pairs(psi, 1.0, 0.0, 0, 1)
    swap_bits(psi, 0, 1)
    phase_multiply(psi, costs, 0.0)
    accumulate_terms(costs, np.zeros(1), np.zeros(1, dtype=np.int64))
    abs2_inplace(psi)
