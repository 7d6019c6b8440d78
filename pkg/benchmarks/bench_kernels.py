"""Timing comparison of the two gate-kernel backends.

Runs the forward state preparation and the adjoint gradient sweep for a
few circuit sizes against both the compiled and the pure-numpy kernels,
and prints the median per-call time of each with the speedup ratio.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import statistics
import time

import numpy as np

from qcbm import _kernels_numba, _kernels_numpy
from qcbm.ansatz import build_layout
from qcbm.divergence import jsd_grad_q
from qcbm.targets import bell_ghz_target

CASES = [(2, 6), (4, 8), (8, 8), (12, 6), (16, 3)]


def lowered(layout, theta):
    angles = np.zeros(layout._pidx.size)
    mask = layout._pidx >= 0
    angles[mask] = theta[layout._pidx[mask]]
    return layout._kinds, layout._pos_a, layout._pos_b, angles


def run_forward(mod, n, args):
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    mod.run_program(amps, *args)
    return amps


def run_adjoint(mod, n, layout, args, target):
    ket = run_forward(mod, n, args)
    q = np.abs(ket) ** 2
    bra = (jsd_grad_q(target, q) * ket).astype(np.complex128)
    grad = np.zeros(layout.n_params)
    mod.adjoint_sweep(ket, bra, *args[:3], args[3], layout._pidx, grad)
    return grad


def timed(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=30)
    opts = parser.parse_args()

    rng = np.random.default_rng(12)
    print(f"{'case':>10} {'workload':>9} {'compiled':>12} {'numpy':>12} {'ratio':>7}")
    for n, p in CASES:
        layout = build_layout(n, p)
        theta = rng.uniform(0, 2 * np.pi, layout.n_params)
        args = lowered(layout, theta)
        target = bell_ghz_target(n).distribution

        # first compiled call may include JIT compilation; warm both paths
        run_adjoint(_kernels_numba, n, layout, args, target)
        run_adjoint(_kernels_numpy, n, layout, args, target)

        repeats = max(3, opts.repeats >> max(0, n - 8))
        for label, fn in [
            ("forward", lambda mod: run_forward(mod, n, args)),
            ("adjoint", lambda mod: run_adjoint(mod, n, layout, args, target)),
        ]:
            t_nb = timed(lambda: fn(_kernels_numba), repeats)
            t_np = timed(lambda: fn(_kernels_numpy), repeats)
            print(
                f"{f'n={n} p={p}':>10} {label:>9} {t_nb * 1e3:>10.3f}ms "
                f"{t_np * 1e3:>10.3f}ms {t_np / t_nb:>6.1f}x"
            )


if __name__ == "__main__":
    main()
