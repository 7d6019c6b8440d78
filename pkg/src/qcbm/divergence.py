"""KLD and JSD on discrete distributions, with derivatives in q.

Conventions: natural log; 0*ln(0/.) = 0 term by term, so the JSD is
always finite and bounded by ln 2. The loss itself is never clamped; in
the gradient and Hessian, q entries below Q_FLOOR are treated as Q_FLOOR
so components stay finite (analytic simulation produces exact zeros,
and unbounded gradients destabilize the optimizer).
"""

from __future__ import annotations

import math

import numpy as np

Q_FLOOR = 1e-300

LN2 = math.log(2.0)


def _pair(P, Q):
    p = np.asarray(P, dtype=np.float64)
    q = np.asarray(Q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {q.shape}")
    return p, q


def kld(P, Q) -> float:
    """sum p ln(p/q); +inf when some p > 0 has q = 0."""
    p, q = _pair(P, Q)
    mask = p > 0
    ps = p[mask]
    qs = q[mask]
    if np.any(qs == 0):
        return math.inf
    return float(np.sum(ps * np.log(ps / qs)))


def jsd(P, Q) -> float:
    """(KLD(P|M) + KLD(Q|M)) / 2 with M = (P+Q)/2; finite, in [0, ln 2]."""
    p, q = _pair(P, Q)
    m = 0.5 * (p + q)
    total = 0.0
    for r in (p, q):
        mask = r > 0
        total += float(np.sum(r[mask] * np.log(r[mask] / m[mask])))
    return max(0.5 * total, 0.0)


def jsd_grad_q(P, Q) -> np.ndarray:
    """Elementwise d JSD / d q_x = ln(2 q_x / (p_x + q_x)) / 2.

    q is floored at Q_FLOOR; the removable p = q = 0 component is 0.
    """
    p, q = _pair(P, Q)
    qc = np.maximum(q, Q_FLOOR)
    out = 0.5 * np.log(2.0 * qc / (p + qc))
    out[(p == 0) & (q == 0)] = 0.0
    return out


def jsd_hess_q(P, Q) -> np.ndarray:
    """Elementwise d2 JSD / d q_x^2 = p_x / (2 q_x (p_x + q_x)), q floored."""
    p, q = _pair(P, Q)
    qc = np.maximum(q, Q_FLOOR)
    return 0.5 * p / (qc * (p + qc))
