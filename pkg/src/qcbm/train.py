"""Adam training of the circuit against a target distribution.

One run: draw theta uniform on [0, 2pi) from a per-run stream, take
n_steps Adam steps on the JSD, and record the loss after every step
(entry 0 is the loss at initialization, so the trajectory has
n_steps + 1 entries). Analytic mode uses the adjoint gradient and exact
Born probabilities; finite-shot mode replaces every probability vector
with a fresh n_shots histogram, both inside the gradient and for the
recorded loss.

Run r of a sweep draws its stream from base_seed XOR splitmix64(r), so
runs are decorrelated yet the whole sweep replays from one seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ._rng import derive_run_seed
from .ansatz import AnsatzLayout, build_layout, born_distribution
from .diff import gradient_adjoint, gradient_sampled, _histogram
from .divergence import jsd
from .targets import TargetSpec


class NonFiniteGradientError(RuntimeError):
    """A gradient component became NaN or infinite; the run must abort."""


@dataclass(frozen=True)
class TrainConfig:
    n_qubits: int
    n_layers: int
    target: TargetSpec
    n_steps: int = 200
    learning_rate: float = 0.01
    beta1: float = 0.9
    beta2: float = 0.999
    adam_epsilon: float = 1e-8
    n_shots: Optional[int] = None
    seed: int = 0
    run_index: int = 0
    epsilon: float = 1e-8  # TTS threshold; not an optimizer constant

    def to_json(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "n_layers": self.n_layers,
            "target": {
                "name": self.target.name,
                "n_qubits": self.target.n_qubits,
                "seed": self.target.seed,
                "source_path": self.target.source_path,
            },
            "n_steps": self.n_steps,
            "learning_rate": self.learning_rate,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "adam_epsilon": self.adam_epsilon,
            "n_shots": self.n_shots,
            "seed": self.seed,
            "run_index": self.run_index,
            "epsilon": self.epsilon,
        }


@dataclass
class AdamState:
    first_moment: np.ndarray
    second_moment: np.ndarray
    step_count: int = 0

    @classmethod
    def zeros(cls, n_params: int) -> "AdamState":
        return cls(np.zeros(n_params), np.zeros(n_params), 0)


@dataclass
class RunRecord:
    config: TrainConfig
    run_seed: int
    initial_theta: np.ndarray
    final_theta: np.ndarray
    loss_trajectory: np.ndarray
    tts: int
    wall_time: float
    failed: bool = False
    diagnostics: str = ""

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "run_seed": self.run_seed,
            "initial_theta": self.initial_theta.tolist(),
            "final_theta": self.final_theta.tolist(),
            "loss_trajectory": self.loss_trajectory.tolist(),
            "tts": self.tts,
            "wall_time": self.wall_time,
            "failed": self.failed,
            "diagnostics": self.diagnostics,
        }


def init_params(layout: AnsatzLayout, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. uniform angles on [0, 2pi)."""
    return rng.uniform(0.0, 2.0 * np.pi, layout.n_params)


def adam_step(state: AdamState, theta: np.ndarray, grad: np.ndarray, config: TrainConfig):
    """Bias-corrected Adam; returns (new state, new theta)."""
    if theta.shape != grad.shape:
        raise ValueError(f"shape mismatch: theta {theta.shape} vs grad {grad.shape}")
    if not np.all(np.isfinite(grad)):
        bad = np.flatnonzero(~np.isfinite(grad))
        raise NonFiniteGradientError(
            f"non-finite gradient component(s) at indices {bad.tolist()[:8]} "
            f"on step {state.step_count + 1}"
        )
    t = state.step_count + 1
    m = config.beta1 * state.first_moment + (1.0 - config.beta1) * grad
    v = config.beta2 * state.second_moment + (1.0 - config.beta2) * grad * grad
    m_hat = m / (1.0 - config.beta1**t)
    v_hat = v / (1.0 - config.beta2**t)
    new_theta = theta - config.learning_rate * m_hat / (np.sqrt(v_hat) + config.adam_epsilon)
    return AdamState(m, v, t), new_theta


def tts(trajectory, epsilon: float, n_steps: int) -> int:
    """First step index with loss <= epsilon; n_steps when never reached."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    traj = np.asarray(trajectory, dtype=np.float64)
    hits = np.flatnonzero(traj <= epsilon)
    return int(hits[0]) if hits.size else n_steps


def sample_histogram(q, n_shots: int, rng: np.random.Generator) -> np.ndarray:
    """Empirical distribution of n_shots multinomial draws from q."""
    if n_shots < 1:
        raise ValueError(f"n_shots must be >= 1, got {n_shots}")
    return _histogram(np.asarray(q, dtype=np.float64), n_shots, rng)


def train_run(config: TrainConfig) -> RunRecord:
    start = time.perf_counter()
    layout = build_layout(config.n_qubits, config.n_layers)
    p = config.target.distribution
    run_seed = derive_run_seed(config.seed, config.run_index)
    rng = np.random.default_rng(run_seed)

    theta0 = init_params(layout, rng)
    theta = theta0
    state = AdamState.zeros(layout.n_params)

    def observed_loss() -> float:
        q = born_distribution(layout, theta)
        if config.n_shots is not None:
            q = sample_histogram(q, config.n_shots, rng)
        return jsd(p, q)

    losses = [observed_loss()]
    failed = False
    diagnostics = ""
    for _ in range(config.n_steps):
        if config.n_shots is None:
            grad = gradient_adjoint(layout, theta, p)
        else:
            grad = gradient_sampled(layout, theta, p, config.n_shots, rng)
        try:
            state, theta = adam_step(state, theta, grad, config)
        except NonFiniteGradientError as exc:
            failed = True
            diagnostics = str(exc)
            break
        losses.append(observed_loss())

    trajectory = np.asarray(losses)
    return RunRecord(
        config=config,
        run_seed=run_seed,
        initial_theta=theta0,
        final_theta=theta,
        loss_trajectory=trajectory,
        tts=tts(trajectory, config.epsilon, config.n_steps),
        wall_time=time.perf_counter() - start,
        failed=failed,
        diagnostics=diagnostics,
    )


def run_sweep_point(config: TrainConfig, n_runs: int) -> list:
    """n_runs independent runs of one (n, p, target) cell, run_index 0..n_runs-1."""
    return [train_run(replace(config, run_index=r)) for r in range(n_runs)]
