"""Pure-numpy gate kernels.

All functions mutate a 1-D complex128 amplitude array in place. Wire
positions are bit positions counted from the least-significant bit of the
basis index; callers translate qubit labels (qubit 0 = most-significant
bit) before reaching this layer.

Gate programs are four parallel arrays: kinds (RX/RY/CNOT codes), pos_a
(rotation wire, or CNOT control), pos_b (CNOT target, -1 for rotations)
and per-gate angles (0.0 for CNOT).
"""

from __future__ import annotations

import math

import numpy as np

RX = 0
RY = 1
CNOT = 2

AXIS_X = 0
AXIS_Y = 1


def _rotation_entries(axis: int, angle: float):
    c = math.cos(0.5 * angle)
    s = math.sin(0.5 * angle)
    if axis == AXIS_X:
        return c + 0j, -1j * s, -1j * s, c + 0j
    return c + 0j, -s + 0j, s + 0j, c + 0j


def apply_rotation(amps: np.ndarray, axis: int, pos: int, angle: float) -> None:
    a00, a01, a10, a11 = _rotation_entries(axis, angle)
    v = amps.reshape(-1, 2, 1 << pos)
    x0 = v[:, 0, :].copy()
    x1 = v[:, 1, :].copy()
    v[:, 0, :] = a00 * x0 + a01 * x1
    v[:, 1, :] = a10 * x0 + a11 * x1


def apply_cnot(amps: np.ndarray, cpos: int, tpos: int) -> None:
    nbits = amps.size.bit_length() - 1
    v = amps.reshape([2] * nbits)
    sel10 = [slice(None)] * nbits
    sel11 = [slice(None)] * nbits
    sel10[nbits - 1 - cpos] = 1
    sel11[nbits - 1 - cpos] = 1
    sel10[nbits - 1 - tpos] = 0
    sel11[nbits - 1 - tpos] = 1
    tmp = v[tuple(sel10)].copy()
    v[tuple(sel10)] = v[tuple(sel11)]
    v[tuple(sel11)] = tmp


def apply_pauli(amps: np.ndarray, axis: int, pos: int) -> None:
    v = amps.reshape(-1, 2, 1 << pos)
    x0 = v[:, 0, :].copy()
    x1 = v[:, 1, :].copy()
    if axis == AXIS_X:
        v[:, 0, :] = x1
        v[:, 1, :] = x0
    else:
        v[:, 0, :] = -1j * x1
        v[:, 1, :] = 1j * x0


def run_program(amps, kinds, pos_a, pos_b, angles) -> None:
    for j in range(kinds.size):
        k = kinds[j]
        if k == CNOT:
            apply_cnot(amps, pos_a[j], pos_b[j])
        else:
            apply_rotation(amps, k, pos_a[j], angles[j])


def adjoint_sweep(ket, bra, kinds, pos_a, pos_b, angles, pidx, grad) -> None:
    """Reverse pass: gates are undone from both vectors while per-parameter
    derivative contributions Im<bra|A|ket> are collected at each rotation."""
    for j in range(kinds.size - 1, -1, -1):
        k = kinds[j]
        if k == CNOT:
            apply_cnot(ket, pos_a[j], pos_b[j])
            apply_cnot(bra, pos_a[j], pos_b[j])
            continue
        pos = pos_a[j]
        vk = ket.reshape(-1, 2, 1 << pos)
        vb = bra.reshape(-1, 2, 1 << pos)
        if k == RX:
            s = np.vdot(vb[:, 0, :], vk[:, 1, :]) + np.vdot(vb[:, 1, :], vk[:, 0, :])
        else:
            s = 1j * (np.vdot(vb[:, 1, :], vk[:, 0, :]) - np.vdot(vb[:, 0, :], vk[:, 1, :]))
        grad[pidx[j]] = s.imag
        apply_rotation(ket, k, pos, -angles[j])
        apply_rotation(bra, k, pos, -angles[j])
