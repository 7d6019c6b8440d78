"""Dense statevector simulation for small n-qubit pure states.

Basis index x encodes the measured bitstring with qubit 0 as the
most-significant bit, so qubit q lives at bit position n-1-q of x.
Gate application mutates the amplitude buffer in place and returns the
same StateVector, O(2^n) work per gate with no matrix materialization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels

MAX_QUBITS = 24

_AXES = {"x": _kernels.AXIS_X, "y": _kernels.AXIS_Y}


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


def init_zero(n: int) -> StateVector:
    """|0...0> on n qubits."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def _bitpos(state: StateVector, qubit: int) -> int:
    if not 0 <= qubit < state.n_qubits:
        raise IndexError(f"qubit {qubit} out of range for {state.n_qubits} qubits")
    return state.n_qubits - 1 - qubit


def apply_rotation(state: StateVector, axis: str, qubit: int, angle: float) -> StateVector:
    """exp(-i*angle*A/2) on one wire, A in {X, Y}."""
    try:
        code = _AXES[axis.lower()]
    except KeyError:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}") from None
    if not np.isfinite(angle):
        raise ValueError(f"angle must be finite, got {angle!r}")
    _kernels.apply_rotation(state.amplitudes, code, _bitpos(state, qubit), float(angle))
    return state


def apply_entangler(state: StateVector, control: int, target: int) -> StateVector:
    """CNOT: flip the target bit on basis states whose control bit is 1."""
    if control == target:
        raise IndexError(f"control and target must differ, both are {control}")
    _kernels.apply_cnot(state.amplitudes, _bitpos(state, control), _bitpos(state, target))
    return state


def probabilities(state: StateVector) -> np.ndarray:
    amps = state.amplitudes
    return (amps.real * amps.real + amps.imag * amps.imag).astype(np.float64, copy=False)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b> = sum conj(a_x) b_x."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit-count mismatch: {a.n_qubits} vs {b.n_qubits}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
