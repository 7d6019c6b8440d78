"""Numba-jitted gate kernels, signature-compatible with _kernels_numpy.

Pair enumeration follows the usual strided scheme: for a wire at bit
position pos, index g over size/2 group indices and rebuild the full
basis index by inserting a 0 bit at pos (i0) or a 1 bit (i1).
"""

from __future__ import annotations

import math

from numba import njit

from ._kernels_numpy import AXIS_X, AXIS_Y, CNOT, RX, RY  # noqa: F401


@njit(cache=True)
def apply_rotation(amps, axis, pos, angle):
    c = math.cos(0.5 * angle)
    s = math.sin(0.5 * angle)
    if axis == AXIS_X:
        a00 = c + 0j
        a01 = -1j * s
        a10 = -1j * s
        a11 = c + 0j
    else:
        a00 = c + 0j
        a01 = -s + 0j
        a10 = s + 0j
        a11 = c + 0j
    k = 1 << pos
    for g in range(amps.size >> 1):
        i0 = ((g >> pos) << (pos + 1)) | (g & (k - 1))
        i1 = i0 | k
        x0 = amps[i0]
        x1 = amps[i1]
        amps[i0] = a00 * x0 + a01 * x1
        amps[i1] = a10 * x0 + a11 * x1


@njit(cache=True)
def apply_cnot(amps, cpos, tpos):
    lo = cpos if cpos < tpos else tpos
    hi = tpos if cpos < tpos else cpos
    klo = 1 << lo
    khi = 1 << hi
    cbit = 1 << cpos
    tbit = 1 << tpos
    for g in range(amps.size >> 2):
        t = ((g >> lo) << (lo + 1)) | (g & (klo - 1))
        base = ((t >> hi) << (hi + 1)) | (t & (khi - 1))
        i0 = base | cbit
        i1 = base | cbit | tbit
        x = amps[i0]
        amps[i0] = amps[i1]
        amps[i1] = x


@njit(cache=True)
def apply_pauli(amps, axis, pos):
    k = 1 << pos
    for g in range(amps.size >> 1):
        i0 = ((g >> pos) << (pos + 1)) | (g & (k - 1))
        i1 = i0 | k
        x0 = amps[i0]
        x1 = amps[i1]
        if axis == AXIS_X:
            amps[i0] = x1
            amps[i1] = x0
        else:
            amps[i0] = -1j * x1
            amps[i1] = 1j * x0


@njit(cache=True)
def run_program(amps, kinds, pos_a, pos_b, angles):
    for j in range(kinds.size):
        k = kinds[j]
        if k == CNOT:
            apply_cnot(amps, pos_a[j], pos_b[j])
        else:
            apply_rotation(amps, k, pos_a[j], angles[j])


@njit(cache=True)
def adjoint_sweep(ket, bra, kinds, pos_a, pos_b, angles, pidx, grad):
    for j in range(kinds.size - 1, -1, -1):
        k = kinds[j]
        if k == CNOT:
            apply_cnot(ket, pos_a[j], pos_b[j])
            apply_cnot(bra, pos_a[j], pos_b[j])
            continue
        pos = pos_a[j]
        kk = 1 << pos
        val = 0.0
        if k == RX:
            # Im sum(conj(b0) k1 + conj(b1) k0)
            for g in range(ket.size >> 1):
                i0 = ((g >> pos) << (pos + 1)) | (g & (kk - 1))
                i1 = i0 | kk
                z = bra[i0].conjugate() * ket[i1] + bra[i1].conjugate() * ket[i0]
                val += z.imag
        else:
            # Im<b|Y|k> = Re sum(conj(b1) k0 - conj(b0) k1)
            for g in range(ket.size >> 1):
                i0 = ((g >> pos) << (pos + 1)) | (g & (kk - 1))
                i1 = i0 | kk
                z = bra[i1].conjugate() * ket[i0] - bra[i0].conjugate() * ket[i1]
                val += z.real
        grad[pidx[j]] = val
        apply_rotation(ket, k, pos, -angles[j])
        apply_rotation(bra, k, pos, -angles[j])
