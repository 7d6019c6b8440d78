import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcbm.statevec import (
    MAX_QUBITS,
    apply_entangler,
    apply_rotation,
    init_zero,
    inner_product,
    probabilities,
)

INV_SQRT2 = 1.0 / np.sqrt(2.0)


def rx_matrix(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry_matrix(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def full_unitary(n, qubit, gate):
    """Kronecker embedding with qubit 0 as the most significant factor."""
    u = np.eye(1)
    for q in range(n):
        u = np.kron(u, gate if q == qubit else np.eye(2))
    return u


def random_state(rng, n):
    state = init_zero(n)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    state.amplitudes[:] = amps / np.linalg.norm(amps)
    return state


class TestInitZero:
    def test_all_weight_on_zero_string(self):
        state = init_zero(3)
        assert state.n_qubits == 3
        assert state.amplitudes.dtype == np.complex128
        expected = np.zeros(8, dtype=np.complex128)
        expected[0] = 1.0
        np.testing.assert_array_equal(state.amplitudes, expected)

    def test_bounds(self):
        init_zero(1)
        init_zero(MAX_QUBITS)
        with pytest.raises(ValueError):
            init_zero(0)
        with pytest.raises(ValueError):
            init_zero(MAX_QUBITS + 1)


class TestRotations:
    def test_ry_pi_flips_to_one(self):
        state = apply_rotation(init_zero(1), "y", 0, np.pi)
        np.testing.assert_allclose(state.amplitudes, [0.0, 1.0], atol=1e-15)

    def test_rx_pi_flips_with_phase(self):
        state = apply_rotation(init_zero(1), "x", 0, np.pi)
        np.testing.assert_allclose(state.amplitudes, [0.0, -1j], atol=1e-15)

    def test_ry_half_pi_equal_superposition(self):
        state = apply_rotation(init_zero(1), "y", 0, np.pi / 2)
        np.testing.assert_allclose(state.amplitudes, [INV_SQRT2, INV_SQRT2], atol=1e-15)

    @pytest.mark.parametrize("axis,gate", [("x", rx_matrix), ("y", ry_matrix)])
    def test_matches_dense_matrix_on_random_states(self, axis, gate):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(1, 6))
            qubit = int(rng.integers(0, n))
            theta = float(rng.uniform(-2 * np.pi, 2 * np.pi))
            state = random_state(rng, n)
            expected = full_unitary(n, qubit, gate(theta)) @ state.amplitudes
            got = apply_rotation(state, axis, qubit, theta)
            np.testing.assert_allclose(got.amplitudes, expected, atol=1e-14)

    def test_rejects_bad_input(self):
        state = init_zero(2)
        with pytest.raises(ValueError):
            apply_rotation(state, "z", 0, 0.1)
        with pytest.raises(IndexError):
            apply_rotation(state, "x", 2, 0.1)
        with pytest.raises(ValueError):
            apply_rotation(state, "x", 0, np.nan)
        with pytest.raises(ValueError):
            apply_rotation(state, "x", 0, np.inf)


class TestEntangler:
    def test_truth_table(self):
        # qubit 0 is the most significant bit, so |q0 q1> = index 2*q0 + q1
        for src, dst in [(0b00, 0b00), (0b01, 0b01), (0b10, 0b11), (0b11, 0b10)]:
            state = init_zero(2)
            state.amplitudes[0] = 0.0
            state.amplitudes[src] = 1.0
            out = apply_entangler(state, 0, 1)
            assert out.amplitudes[dst] == 1.0, f"{src:02b} should map to {dst:02b}"

    def test_bell_preparation(self):
        state = apply_rotation(init_zero(2), "y", 0, np.pi / 2)
        state = apply_entangler(state, 0, 1)
        np.testing.assert_allclose(
            state.amplitudes, [INV_SQRT2, 0.0, 0.0, INV_SQRT2], atol=1e-15
        )
        np.testing.assert_allclose(probabilities(state), [0.5, 0, 0, 0.5], atol=1e-15)

    def test_reversed_direction(self):
        state = init_zero(2)
        state.amplitudes[0] = 0.0
        state.amplitudes[0b01] = 1.0
        out = apply_entangler(state, 1, 0)
        assert out.amplitudes[0b11] == 1.0

    def test_noncontiguous_pair(self):
        state = init_zero(3)
        state.amplitudes[0] = 0.0
        state.amplitudes[0b100] = 1.0
        out = apply_entangler(state, 0, 2)
        assert out.amplitudes[0b101] == 1.0

    def test_rejects_bad_qubits(self):
        state = init_zero(2)
        with pytest.raises(IndexError):
            apply_entangler(state, 0, 0)
        with pytest.raises(IndexError):
            apply_entangler(state, 0, 2)
        with pytest.raises(IndexError):
            apply_entangler(state, -1, 1)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_random_circuits_preserve_norm(data):
    n = data.draw(st.integers(1, 5))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    state = random_state(rng, n)
    for _ in range(data.draw(st.integers(0, 12))):
        if n >= 2 and rng.random() < 0.3:
            q = rng.choice(n, size=2, replace=False)
            state = apply_entangler(state, int(q[0]), int(q[1]))
        else:
            axis = "x" if rng.random() < 0.5 else "y"
            state = apply_rotation(state, axis, int(rng.integers(n)), rng.uniform(-7, 7))
    assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_entangler_is_an_involution(n, seed):
    rng = np.random.default_rng(seed)
    q = rng.choice(n, size=2, replace=False)
    state = random_state(rng, n)
    before = state.amplitudes.copy()
    out = apply_entangler(apply_entangler(state, int(q[0]), int(q[1])), int(q[0]), int(q[1]))
    np.testing.assert_array_equal(out.amplitudes, before)


def test_gates_preserve_inner_products():
    rng = np.random.default_rng(42)
    a, b = random_state(rng, 3), random_state(rng, 3)
    before = inner_product(a, b)
    ops = [("x", 0, 0.7), ("y", 2, -1.3), ("x", 1, 2.9)]
    for axis, q, theta in ops:
        a = apply_rotation(a, axis, q, theta)
        b = apply_rotation(b, axis, q, theta)
    a = apply_entangler(a, 1, 2)
    b = apply_entangler(b, 1, 2)
    assert abs(inner_product(a, b) - before) < 1e-13


def test_inner_product_requires_matching_sizes():
    with pytest.raises(ValueError):
        inner_product(init_zero(2), init_zero(3))


def test_probabilities_are_squared_magnitudes():
    rng = np.random.default_rng(7)
    state = random_state(rng, 4)
    probs = probabilities(state)
    np.testing.assert_allclose(probs, np.abs(state.amplitudes) ** 2, atol=1e-15)
    assert abs(probs.sum() - 1.0) < 1e-12
    assert (probs >= 0).all()
