import tracemalloc

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from _helpers import random_state, random_su2
from fastqaoa.mixers import (
    SU2,
    Mixer,
    apply_su2,
    apply_uniform_su2,
    apply_xy,
    complete_edges,
    ring_edges,
    rx_layer,
    xy_complete_layer,
    xy_ring_layer,
)
from fastqaoa.reference import dense_uniform_su2
from fastqaoa.statevec import basis_state, norm, uniform_state

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])


def _embed(pauli, n, q):
    # full 2^n matrix with `pauli` on qubit q (bit q of the index)
    op = np.eye(1, dtype=complex)
    for pos in reversed(range(n)):
        op = np.kron(op, pauli if pos == q else np.eye(2))
    return op


def hamming_masses(state):
    weights = np.bitwise_count(np.arange(state.size, dtype=np.uint64))
    n = state.size.bit_length() - 1
    return np.array(
        [np.sum(np.abs(state[weights == h]) ** 2) for h in range(n + 1)]
    )


class TestSU2:
    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="special unitary"):
            SU2(1.0, 1.0)

    def test_rx_matches_matrix_exponential(self):
        np.testing.assert_allclose(
            SU2.rx(0.37).matrix(), expm(-0.37j * X), atol=1e-12
        )

    def test_dagger_inverts(self):
        u = random_su2(np.random.default_rng(0))
        np.testing.assert_allclose(
            u.matrix() @ u.dagger().matrix(), np.eye(2), atol=1e-12
        )


class TestApplySU2:
    def test_identity(self):
        rng = np.random.default_rng(1)
        state = random_state(rng, 3)
        before = state.copy()
        apply_su2(state, SU2.identity(), 1)
        np.testing.assert_array_equal(state, before)

    def test_single_qubit_columns(self):
        u = random_su2(np.random.default_rng(2))
        state = basis_state(1, 0)
        apply_su2(state, u, 0)
        np.testing.assert_allclose(state, [u.a, u.b], atol=1e-15)

    def test_quarter_turn_on_uniform(self):
        # e^{-i pi/2 X} maps |+> to -i|+> on the targeted qubit
        state = uniform_state(2)
        apply_su2(state, SU2.rx(np.pi / 2), 1)
        np.testing.assert_allclose(state, [-0.5j] * 4, atol=1e-12)

    def test_matches_dense_kron_on_one_qubit(self):
        rng = np.random.default_rng(3)
        for q in range(3):
            u = random_su2(rng)
            state = random_state(rng, 3)
            us = [SU2.identity()] * 3
            us[q] = u
            expected = dense_uniform_su2(us) @ state
            apply_su2(state, u, q)
            np.testing.assert_allclose(state, expected, atol=1e-12)

    def test_out_of_range_qubit(self):
        with pytest.raises(ValueError, match="out of range"):
            apply_su2(uniform_state(2), SU2.identity(), 2)

    @given(seed=st.integers(0, 1000))
    def test_unitary_and_invertible(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 7))
        q = int(rng.integers(0, n))
        u = random_su2(rng)
        state = random_state(rng, n)
        before = state.copy()
        apply_su2(state, u, q)
        assert abs(norm(state) - 1.0) < 1e-12
        apply_su2(state, u.dagger(), q)
        np.testing.assert_allclose(state, before, atol=1e-12)

    @given(seed=st.integers(0, 1000))
    def test_distinct_qubits_commute(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        q1, q2 = rng.choice(n, size=2, replace=False)
        u1, u2 = random_su2(rng), random_su2(rng)
        a = random_state(rng, n)
        b = a.copy()
        apply_su2(a, u1, int(q1))
        apply_su2(a, u2, int(q2))
        apply_su2(b, u2, int(q2))
        apply_su2(b, u1, int(q1))
        np.testing.assert_allclose(a, b, atol=1e-12)


class TestApplyUniformSU2:
    def test_all_identity(self):
        rng = np.random.default_rng(4)
        state = random_state(rng, 4)
        before = state.copy()
        apply_uniform_su2(state, [SU2.identity()] * 4)
        np.testing.assert_array_equal(state, before)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_matches_dense_kron(self, n):
        rng = np.random.default_rng(100 + n)
        us = [random_su2(rng) for _ in range(n)]
        state = random_state(rng, n)
        expected = dense_uniform_su2(us) @ state
        apply_uniform_su2(state, us)
        np.testing.assert_allclose(state, expected, atol=1e-12)

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError, match="expected 3"):
            apply_uniform_su2(uniform_state(3), [SU2.identity()] * 2)

    def test_no_full_size_scratch(self):
        state = uniform_state(16)
        us = [random_su2(np.random.default_rng(5)) for _ in range(16)]
        apply_uniform_su2(state, us)  # warm
        xy_ring_layer(state, 0.2)
        tracemalloc.start()
        apply_uniform_su2(state, us)
        xy_ring_layer(state, 0.3)
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        assert peak < state.nbytes // 4


class TestRxLayer:
    def test_beta_zero_identity(self):
        rng = np.random.default_rng(6)
        state = random_state(rng, 3)
        before = state.copy()
        rx_layer(state, 0.0)
        np.testing.assert_allclose(state, before, atol=1e-15)

    def test_uniform_is_eigenstate(self):
        state = uniform_state(4)
        rx_layer(state, 0.31)
        np.testing.assert_allclose(
            state, np.exp(-0.31j * 4) * uniform_state(4), atol=1e-12
        )

    def test_quarter_turn_flips_all_bits(self):
        n = 3
        state = basis_state(n, 0)
        rx_layer(state, np.pi / 2)
        expected = np.zeros(8, dtype=complex)
        expected[7] = (-1j) ** n
        np.testing.assert_allclose(state, expected, atol=1e-12)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_matches_dense_exponential(self, n):
        rng = np.random.default_rng(200 + n)
        state = random_state(rng, n)
        ham = sum(_embed(X, n, q) for q in range(n))
        expected = expm(-0.25j * ham) @ state
        rx_layer(state, 0.25)
        np.testing.assert_allclose(state, expected, atol=1e-10)

    def test_round_trip(self):
        rng = np.random.default_rng(7)
        state = random_state(rng, 5)
        before = state.copy()
        rx_layer(state, 0.9)
        rx_layer(state, -0.9)
        np.testing.assert_allclose(state, before, atol=1e-12)


class TestApplyXY:
    def test_aligned_pairs_untouched(self):
        for k in (0b00, 0b11):
            state = basis_state(2, k)
            apply_xy(state, 0.7, 0, 1)
            np.testing.assert_allclose(state, basis_state(2, k), atol=1e-15)

    def test_two_qubit_rotation(self):
        beta = 0.42
        state = basis_state(2, 0b01)
        apply_xy(state, beta, 0, 1)
        expected = np.zeros(4, dtype=complex)
        expected[0b01] = np.cos(beta)
        expected[0b10] = -1j * np.sin(beta)
        np.testing.assert_allclose(state, expected, atol=1e-12)

    def test_quarter_turn_swaps_with_phase(self):
        state = basis_state(2, 0b01)
        apply_xy(state, np.pi / 2, 0, 1)
        np.testing.assert_allclose(state, -1j * basis_state(2, 0b10), atol=1e-12)

    def test_matches_matrix_exponential(self):
        rng = np.random.default_rng(8)
        n, i, j, beta = 4, 0, 2, 0.61
        ham = _embed(X, n, i) @ _embed(X, n, j) + _embed(Y, n, i) @ _embed(Y, n, j)
        state = random_state(rng, n)
        expected = expm(-0.5j * beta * ham) @ state
        apply_xy(state, beta, i, j)
        np.testing.assert_allclose(state, expected, atol=1e-10)

    def test_symmetric_in_pair_order(self):
        rng = np.random.default_rng(9)
        a = random_state(rng, 3)
        b = a.copy()
        apply_xy(a, 0.3, 0, 2)
        apply_xy(b, 0.3, 2, 0)
        np.testing.assert_array_equal(a, b)

    def test_same_qubit_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            apply_xy(uniform_state(2), 0.1, 1, 1)


class TestXYLayers:
    def test_ring_edge_order(self):
        assert ring_edges(2) == [(0, 1)]
        assert ring_edges(3) == [(0, 1), (1, 2), (2, 0)]
        assert ring_edges(4) == [(0, 1), (2, 3), (1, 2), (3, 0)]
        assert ring_edges(5) == [(0, 1), (2, 3), (1, 2), (3, 4), (4, 0)]

    def test_complete_edge_order(self):
        assert complete_edges(3) == [(0, 1), (0, 2), (1, 2)]

    def test_beta_zero_identity(self):
        rng = np.random.default_rng(10)
        state = random_state(rng, 4)
        before = state.copy()
        xy_ring_layer(state, 0.0)
        xy_complete_layer(state, 0.0)
        np.testing.assert_allclose(state, before, atol=1e-15)

    @pytest.mark.parametrize("layer", [xy_ring_layer, xy_complete_layer])
    def test_conserves_hamming_mass(self, layer):
        rng = np.random.default_rng(11)
        for _ in range(5):
            n = int(rng.integers(2, 9))
            state = random_state(rng, n)
            before = hamming_masses(state)
            layer(state, float(rng.uniform(-2, 2)))
            np.testing.assert_allclose(hamming_masses(state), before, atol=1e-12)

    def test_ring_matches_dense_gate_sequence(self):
        rng = np.random.default_rng(12)
        n, beta = 4, 0.77
        state = random_state(rng, n)
        dense = np.eye(1 << n, dtype=complex)
        for i, j in ring_edges(n):
            gate = np.eye(1 << n, dtype=complex)
            flip = (1 << i) | (1 << j)
            for x in range(1 << n):
                if ((x >> i) ^ (x >> j)) & 1:
                    gate[x, x] = np.cos(beta)
                    gate[x ^ flip, x] = -1j * np.sin(beta)
            dense = gate @ dense
        expected = dense @ state
        xy_ring_layer(state, beta)
        np.testing.assert_allclose(state, expected, atol=1e-12)


class TestMixerDispatch:
    def test_parse(self):
        assert Mixer.parse("x").kind == "x"
        assert Mixer.parse(Mixer.xy_ring()).kind == "xy-ring"
        with pytest.raises(ValueError, match="unknown mixer"):
            Mixer.parse("zz")

    def test_custom_real_rotation(self):
        # plain real rotation a = cos, b = sin (not the e^{-i beta X} gate)
        n, beta = 3, 0.4
        mixer = Mixer.custom(lambda b: [SU2(np.cos(b), np.sin(b))] * n)
        state = uniform_state(n)
        mixer.apply_layer(state, beta)
        expected = dense_uniform_su2([SU2(np.cos(beta), np.sin(beta))] * n) @ uniform_state(n)
        np.testing.assert_allclose(state, expected, atol=1e-12)

    def test_custom_requires_factory(self):
        with pytest.raises(ValueError, match="factory"):
            Mixer("custom")
        with pytest.raises(ValueError, match="factory"):
            Mixer("x", lambda b: [])
