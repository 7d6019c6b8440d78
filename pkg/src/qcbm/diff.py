"""Derivatives of the JSD loss in circuit parameters, plus the QFI.

Three gradient routes: the parameter-shift rule (shift pi/2, exact for
exp(-i theta A/2) generators), an adjoint reverse sweep (same values,
one forward pass plus one backward pass), and a finite-shot variant of
the shift rule where every probability vector is replaced by a fresh
empirical histogram. The Hessian uses the double-shift rule plus the
Gauss-Newton term; the QFI is assembled from exact derivative states.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .ansatz import AnsatzLayout, _angles, born_distribution, prepare_state
from .divergence import jsd_grad_q, jsd_hess_q

SHIFT = 0.5 * np.pi


def _shifted_born(layout: AnsatzLayout, theta: np.ndarray, k: int, delta: float) -> np.ndarray:
    shifted = theta.copy()
    shifted[k] += delta
    return born_distribution(layout, shifted)


def gradient_param_shift(layout: AnsatzLayout, theta, target) -> np.ndarray:
    """Component k = sum_x dJSD/dq_x * [q(theta + pi/2 e_k) - q(theta - pi/2 e_k)]_x / 2."""
    theta = np.asarray(theta, dtype=np.float64)
    gq = jsd_grad_q(target, born_distribution(layout, theta))
    grad = np.empty(layout.n_params)
    for k in range(layout.n_params):
        qp = _shifted_born(layout, theta, k, SHIFT)
        qm = _shifted_born(layout, theta, k, -SHIFT)
        grad[k] = gq @ (qp - qm) * 0.5
    return grad


def gradient_adjoint(layout: AnsatzLayout, theta, target) -> np.ndarray:
    """Same values as the shift rule in O(n_params * 2^n) total work.

    With w_x = (dJSD/dq_x) psi_x, each component is 2 Re<w|d_k psi>; the
    reverse sweep peels gates off a ket (psi) and a bra (w) in lockstep,
    reading off Im<bra|A|ket> at each rotation.
    """
    theta = np.asarray(theta, dtype=np.float64)
    state = prepare_state(layout, theta)
    psi = state.amplitudes
    q = psi.real * psi.real + psi.imag * psi.imag
    bra = jsd_grad_q(target, q).astype(np.complex128) * psi
    grad = np.zeros(layout.n_params)
    _kernels.adjoint_sweep(
        psi,
        bra,
        layout._kinds,
        layout._pos_a,
        layout._pos_b,
        _angles(layout, theta),
        layout._pidx,
        grad,
    )
    return grad


def _histogram(q: np.ndarray, n_shots: int, rng: np.random.Generator) -> np.ndarray:
    return rng.multinomial(n_shots, q / q.sum()) / n_shots


def gradient_sampled(
    layout: AnsatzLayout, theta, target, n_shots: int, rng: np.random.Generator
) -> np.ndarray:
    """Shift rule on empirical histograms: one fresh n_shots draw for the
    unshifted distribution and one per shifted circuit evaluation."""
    if n_shots < 1:
        raise ValueError(f"n_shots must be >= 1, got {n_shots}")
    theta = np.asarray(theta, dtype=np.float64)
    gq = jsd_grad_q(target, _histogram(born_distribution(layout, theta), n_shots, rng))
    grad = np.empty(layout.n_params)
    for k in range(layout.n_params):
        qp = _histogram(_shifted_born(layout, theta, k, SHIFT), n_shots, rng)
        qm = _histogram(_shifted_born(layout, theta, k, -SHIFT), n_shots, rng)
        grad[k] = gq @ (qp - qm) * 0.5
    return grad


def _born_jacobian(layout: AnsatzLayout, theta: np.ndarray) -> np.ndarray:
    """dq_x/dtheta_k by the shift rule; rows indexed by parameter."""
    jac = np.empty((layout.n_params, 1 << layout.n_qubits))
    for k in range(layout.n_params):
        qp = _shifted_born(layout, theta, k, SHIFT)
        qm = _shifted_born(layout, theta, k, -SHIFT)
        jac[k] = 0.5 * (qp - qm)
    return jac


def hessian(layout: AnsatzLayout, theta, target) -> np.ndarray:
    """H_ij = sum_x g'_x d2q_x/dt_i dt_j + sum_x g''_x (dq/dt_i)_x (dq/dt_j)_x.

    Second derivatives of q come from the double shift rule,
    [q(+,+) - q(+,-) - q(-,+) + q(-,-)]/4, which handles i = j without a
    special case; the result is symmetrized as (H + H^T)/2.
    """
    theta = np.asarray(theta, dtype=np.float64)
    m = layout.n_params
    q0 = born_distribution(layout, theta)
    gq = jsd_grad_q(target, q0)
    hq = jsd_hess_q(target, q0)
    jac = _born_jacobian(layout, theta)

    h = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            acc = np.zeros_like(q0)
            for si in (SHIFT, -SHIFT):
                for sj in (SHIFT, -SHIFT):
                    shifted = theta.copy()
                    shifted[i] += si
                    shifted[j] += sj
                    sign = 1.0 if si == sj else -1.0
                    acc += sign * born_distribution(layout, shifted)
            h[i, j] = gq @ acc * 0.25
    h += (jac * hq) @ jac.T
    return 0.5 * (h + h.T)


def _derivative_states(layout: AnsatzLayout, theta: np.ndarray) -> np.ndarray:
    """Rows k hold |d_k psi>, built by inserting (-i/2) A after gate k."""
    angles = _angles(layout, theta)
    dim = 1 << layout.n_qubits
    out = np.empty((layout.n_params, dim), dtype=np.complex128)
    kinds, pos_a, pos_b, pidx = layout._kinds, layout._pos_a, layout._pos_b, layout._pidx
    for j in range(kinds.size):
        if kinds[j] == _kernels.CNOT:
            continue
        amps = np.zeros(dim, dtype=np.complex128)
        amps[0] = 1.0
        _kernels.run_program(
            amps, kinds[: j + 1], pos_a[: j + 1], pos_b[: j + 1], angles[: j + 1]
        )
        _kernels.apply_pauli(amps, kinds[j], pos_a[j])
        amps *= -0.5j
        _kernels.run_program(amps, kinds[j + 1 :], pos_a[j + 1 :], pos_b[j + 1 :], angles[j + 1 :])
        out[pidx[j]] = amps
    return out


def qfi_matrix(layout: AnsatzLayout, theta) -> np.ndarray:
    """F_ij = 4 Re[<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>]."""
    theta = np.asarray(theta, dtype=np.float64)
    psi = prepare_state(layout, theta).amplitudes
    d = _derivative_states(layout, theta)
    dc = d.conj()
    gram = dc @ d.T
    a = dc @ psi
    f = 4.0 * (gram - np.outer(a, a.conj())).real
    return 0.5 * (f + f.T)


def qfi_rank(f: np.ndarray, tau: float = 1e-10) -> int:
    """Count of eigenvalues above tau * lambda_max; 0 for a numerically zero matrix."""
    eig = np.linalg.eigvalsh(np.asarray(f, dtype=np.float64))
    lam_max = float(eig[-1]) if eig.size else 0.0
    if lam_max <= 1e-14:
        return 0
    return int(np.count_nonzero(eig > tau * lam_max))
