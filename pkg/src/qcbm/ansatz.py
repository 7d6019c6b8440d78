"""Hardware-efficient ansatz construction and Born distributions.

A layout is an ordered gate list over n qubits: p entangling blocks, each
an ascending ladder over adjacent pairs (i, i+1) applying RX on i, RX on
i+1, RY on i, RY on i+1, then CNOT(i -> i+1); a final layer of RX then RY
on every qubit closes the circuit. Every rotation owns one parameter,
indexed in gate order, so n_params = 4(n-1)p + 2n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .statevec import StateVector, init_zero, probabilities

_AXES = {"x": _kernels.AXIS_X, "y": _kernels.AXIS_Y}


@dataclass(frozen=True)
class Rotation:
    axis: str
    qubit: int
    param_index: int


@dataclass(frozen=True)
class Entangler:
    control: int
    target: int


@dataclass(frozen=True)
class AnsatzLayout:
    n_qubits: int
    n_layers: int
    gates: tuple
    n_params: int
    # kernel-ready arrays, derived from gates at construction
    _kinds: np.ndarray = field(repr=False, compare=False, default=None)
    _pos_a: np.ndarray = field(repr=False, compare=False, default=None)
    _pos_b: np.ndarray = field(repr=False, compare=False, default=None)
    _pidx: np.ndarray = field(repr=False, compare=False, default=None)

    def to_json(self) -> dict:
        gates = []
        for g in self.gates:
            if isinstance(g, Rotation):
                gates.append({"gate": "r" + g.axis, "qubit": g.qubit, "param": g.param_index})
            else:
                gates.append({"gate": "cnot", "control": g.control, "target": g.target})
        return {
            "n_qubits": self.n_qubits,
            "n_layers": self.n_layers,
            "n_params": self.n_params,
            "gates": gates,
        }


def param_count(n: int, p: int) -> int:
    """4(n-1)p + 2n, the number of independent rotation angles."""
    if n < 2:
        raise ValueError(f"ansatz needs at least 2 qubits, got {n}")
    if p < 0:
        raise ValueError(f"layer count must be >= 0, got {p}")
    return 4 * (n - 1) * p + 2 * n


def build_layout(n: int, p: int) -> AnsatzLayout:
    n_params = param_count(n, p)
    gates: list = []
    k = 0
    for _ in range(p):
        for i in range(n - 1):
            gates.append(Rotation("x", i, k))
            gates.append(Rotation("x", i + 1, k + 1))
            gates.append(Rotation("y", i, k + 2))
            gates.append(Rotation("y", i + 1, k + 3))
            gates.append(Entangler(i, i + 1))
            k += 4
    for q in range(n):
        gates.append(Rotation("x", q, k))
        gates.append(Rotation("y", q, k + 1))
        k += 2
    assert k == n_params

    m = len(gates)
    kinds = np.empty(m, dtype=np.int64)
    pos_a = np.empty(m, dtype=np.int64)
    pos_b = np.empty(m, dtype=np.int64)
    pidx = np.empty(m, dtype=np.int64)
    for j, g in enumerate(gates):
        if isinstance(g, Rotation):
            kinds[j] = _kernels.RX if g.axis == "x" else _kernels.RY
            pos_a[j] = n - 1 - g.qubit
            pos_b[j] = -1
            pidx[j] = g.param_index
        else:
            kinds[j] = _kernels.CNOT
            pos_a[j] = n - 1 - g.control
            pos_b[j] = n - 1 - g.target
            pidx[j] = -1
    return AnsatzLayout(n, p, tuple(gates), n_params, kinds, pos_a, pos_b, pidx)


def _angles(layout: AnsatzLayout, theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (layout.n_params,):
        raise ValueError(f"theta must have shape ({layout.n_params},), got {theta.shape}")
    angles = np.zeros(layout._pidx.size, dtype=np.float64)
    mask = layout._pidx >= 0
    angles[mask] = theta[layout._pidx[mask]]
    return angles


def prepare_state(layout: AnsatzLayout, theta: np.ndarray) -> StateVector:
    """U(theta)|0...0>."""
    state = init_zero(layout.n_qubits)
    _kernels.run_program(
        state.amplitudes, layout._kinds, layout._pos_a, layout._pos_b, _angles(layout, theta)
    )
    return state


def born_distribution(layout: AnsatzLayout, theta: np.ndarray) -> np.ndarray:
    return probabilities(prepare_state(layout, theta))
