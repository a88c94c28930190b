"""Statevector simulator correctness against dense Kronecker oracles."""

import numpy as np
import pytest

from tgopt import StateVector, apply_1q, apply_cz, init_zero, inner_product
from tgopt.errors import ConfigError

from helpers import SX, SZ, kron_embed, dense_cz, random_state


class TestInitZero:
    def test_single_qubit(self):
        state = init_zero(1)
        np.testing.assert_array_equal(state.amplitudes, [1, 0])

    def test_two_qubits(self):
        np.testing.assert_array_equal(init_zero(2).amplitudes, [1, 0, 0, 0])

    def test_four_qubits(self):
        state = init_zero(4)
        assert state.amplitudes.shape == (16,)
        assert state.amplitudes[0] == 1.0
        assert np.count_nonzero(state.amplitudes) == 1

    @pytest.mark.parametrize("n", [0, -1, 21])
    def test_out_of_range(self, n):
        with pytest.raises(ConfigError):
            init_zero(n)


class TestApply1q:
    def test_x_flips(self, kernel_backend):
        out = apply_1q(init_zero(1), SX, 0)
        np.testing.assert_allclose(out.amplitudes, [0, 1])

    def test_minus_i_z_on_zero(self, kernel_backend):
        # -iZ acting on |0> contributes a -i phase
        out = apply_1q(init_zero(2), -1j * SZ, 1)
        np.testing.assert_allclose(out.amplitudes, [-1j, 0, 0, 0])

    def test_matches_kron_oracle(self, kernel_backend, rng):
        for n in range(1, 5):
            state = random_state(n, rng)
            for target in range(n):
                raw = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                got = apply_1q(state, raw, target)
                want = kron_embed(raw, target, n) @ state.amplitudes
                np.testing.assert_allclose(got.amplitudes, want, atol=1e-12)

    def test_unitary_preserves_norm(self, kernel_backend, rng):
        state = random_state(3, rng)
        q, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        out = apply_1q(state, q, 1)
        assert abs(out.norm() - 1.0) <= 1e-12

    def test_linearity(self, kernel_backend, rng):
        a, b = random_state(3, rng), random_state(3, rng)
        op = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        alpha, beta = 0.3 - 0.2j, -1.1 + 0.7j
        mixed = StateVector(3, alpha * a.amplitudes + beta * b.amplitudes)
        lhs = apply_1q(mixed, op, 2).amplitudes
        rhs = alpha * apply_1q(a, op, 2).amplitudes + beta * apply_1q(b, op, 2).amplitudes
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_target_out_of_range(self):
        with pytest.raises(IndexError):
            apply_1q(init_zero(2), SX, 2)

    def test_input_untouched(self, kernel_backend):
        state = init_zero(1)
        apply_1q(state, SX, 0)
        np.testing.assert_array_equal(state.amplitudes, [1, 0])


class TestApplyCz:
    def test_flips_one_one(self, kernel_backend):
        state = StateVector(2, np.array([0, 0, 0, 1], dtype=complex))
        np.testing.assert_allclose(apply_cz(state, 0, 1).amplitudes, [0, 0, 0, -1])

    def test_leaves_one_zero(self, kernel_backend):
        state = StateVector(2, np.array([0, 0, 1, 0], dtype=complex))
        np.testing.assert_allclose(apply_cz(state, 0, 1).amplitudes, [0, 0, 1, 0])

    def test_matches_dense_oracle(self, kernel_backend, rng):
        state = random_state(4, rng)
        got = apply_cz(state, 1, 3)
        want = dense_cz(1, 3, 4) @ state.amplitudes
        np.testing.assert_allclose(got.amplitudes, want, atol=1e-13)

    def test_symmetric_in_arguments(self, kernel_backend, rng):
        state = random_state(4, rng)
        a = apply_cz(state, 1, 3).amplitudes
        b = apply_cz(state, 3, 1).amplitudes
        np.testing.assert_array_equal(a, b)

    def test_equal_indices_rejected(self):
        with pytest.raises(IndexError):
            apply_cz(init_zero(2), 1, 1)


class TestInnerProduct:
    def test_self(self):
        assert inner_product(init_zero(1), init_zero(1)) == pytest.approx(1.0)

    def test_orthogonal(self, kernel_backend):
        one = apply_1q(init_zero(1), SX, 0)
        assert inner_product(init_zero(1), one) == pytest.approx(0.0)

    def test_matches_sum_oracle(self, rng):
        a, b = random_state(3, rng), random_state(3, rng)
        want = np.sum(np.conj(a.amplitudes) * b.amplitudes)
        assert inner_product(a, b) == pytest.approx(want, abs=1e-12)

    def test_conjugate_linear_first_argument(self, rng):
        a, b = random_state(2, rng), random_state(2, rng)
        assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(init_zero(1), init_zero(2))


def test_unitarity_over_gate_sequence(kernel_backend, rng):
    state = init_zero(4)
    for _ in range(30):
        q, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        state = apply_1q(state, q, int(rng.integers(4)))
        a, b = rng.choice(4, size=2, replace=False)
        state = apply_cz(state, int(a), int(b))
    assert abs(state.norm() - 1.0) <= 1e-12
