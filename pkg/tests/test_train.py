import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcbm._rng import SplitMix64, derive_run_seed, splitmix64
from qcbm.ansatz import build_layout
from qcbm.targets import bell_ghz_target, uniform_target
from qcbm.train import (
    AdamState,
    NonFiniteGradientError,
    RunRecord,
    TrainConfig,
    adam_step,
    init_params,
    run_sweep_point,
    sample_histogram,
    train_run,
    tts,
)


def reference_adam(grads, lr=0.01, b1=0.9, b2=0.999, eps=1e-8):
    """Straight-line reimplementation used as the update-rule oracle."""
    theta = np.zeros_like(grads[0])
    m = np.zeros_like(theta)
    v = np.zeros_like(theta)
    for t, g in enumerate(grads, start=1):
        m = b1 * m + (1 - b1) * g
        v = b2 * v + (1 - b2) * g * g
        m_hat = m / (1 - b1**t)
        v_hat = v / (1 - b2**t)
        theta = theta - lr * m_hat / (np.sqrt(v_hat) + eps)
    return theta


class TestAdam:
    def test_matches_reference_updates(self):
        rng = np.random.default_rng(8)
        grads = [rng.normal(size=3) for _ in range(25)]
        cfg = TrainConfig(n_qubits=2, n_layers=0, target=uniform_target(2))
        state = AdamState.zeros(3)
        theta = np.zeros(3)
        for g in grads:
            state, theta = adam_step(state, theta, g, cfg)
        np.testing.assert_allclose(theta, reference_adam(grads), atol=1e-15)
        assert state.step_count == 25

    def test_first_step_size_is_the_learning_rate(self):
        # bias correction makes the first update lr * sign(grad) up to eps
        cfg = TrainConfig(n_qubits=2, n_layers=0, target=uniform_target(2))
        state, theta = adam_step(AdamState.zeros(2), np.zeros(2), np.array([0.3, -4.0]), cfg)
        np.testing.assert_allclose(theta, [-0.01, 0.01], atol=1e-9)

    def test_rejects_non_finite_gradients(self):
        cfg = TrainConfig(n_qubits=2, n_layers=0, target=uniform_target(2))
        with pytest.raises(NonFiniteGradientError, match=r"\[1\]"):
            adam_step(AdamState.zeros(3), np.zeros(3), np.array([0.0, np.nan, 1.0]), cfg)
        with pytest.raises(NonFiniteGradientError):
            adam_step(AdamState.zeros(1), np.zeros(1), np.array([np.inf]), cfg)

    def test_rejects_shape_mismatch(self):
        cfg = TrainConfig(n_qubits=2, n_layers=0, target=uniform_target(2))
        with pytest.raises(ValueError):
            adam_step(AdamState.zeros(2), np.zeros(2), np.zeros(3), cfg)


class TestSeeding:
    def test_run_seeds_are_distinct_across_indices(self):
        seeds = {derive_run_seed(2024, r) for r in range(1000)}
        assert len(seeds) == 1000

    def test_run_seed_formula(self):
        assert derive_run_seed(5, 9) == 5 ^ splitmix64(9)
        assert derive_run_seed(5, 0) == 5 ^ splitmix64(0)

    def test_splitmix_is_a_bijection_sample(self):
        outs = {splitmix64(z) for z in range(4096)}
        assert len(outs) == 4096
        assert all(0 <= v < 1 << 64 for v in outs)

    def test_randbelow_is_unbiased_range(self):
        rng = SplitMix64(3)
        draws = [rng.randbelow(10) for _ in range(2000)]
        assert set(draws) == set(range(10))

    def test_init_params_range_and_determinism(self):
        layout = build_layout(3, 2)
        a = init_params(layout, np.random.default_rng(50))
        b = init_params(layout, np.random.default_rng(50))
        np.testing.assert_array_equal(a, b)
        assert a.shape == (layout.n_params,)
        assert (a >= 0).all() and (a < 2 * np.pi).all()


class TestTTS:
    def test_first_hit_wins(self):
        assert tts([1.0, 1e-9, 1.0, 1e-9], 1e-8, 200) == 1

    def test_initial_point_can_hit(self):
        assert tts([1e-12, 1.0], 1e-8, 200) == 0

    def test_cap_when_never_reached(self):
        assert tts([1.0, 0.5, 0.2], 1e-8, 200) == 200

    def test_epsilon_must_be_positive(self):
        with pytest.raises(ValueError):
            tts([1.0], 0.0, 10)

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(st.floats(1e-12, 1.0), min_size=1, max_size=64),
        st.floats(1e-10, 1e-2),
    )
    def test_matches_linear_scan(self, traj, eps):
        expected = next((i for i, v in enumerate(traj) if v <= eps), 300)
        assert tts(traj, eps, 300) == expected


class TestHistogram:
    def test_values_are_shot_multiples(self):
        q = np.array([0.1, 0.2, 0.3, 0.4])
        h = sample_histogram(q, 250, np.random.default_rng(1))
        np.testing.assert_allclose(h * 250, np.round(h * 250), atol=1e-9)
        assert h.sum() == pytest.approx(1.0)

    def test_concentrates_with_many_shots(self):
        q = np.array([0.25, 0.75])
        h = sample_histogram(q, 1_000_000, np.random.default_rng(2))
        np.testing.assert_allclose(h, q, atol=2e-3)

    def test_rejects_zero_shots(self):
        with pytest.raises(ValueError):
            sample_histogram(np.array([1.0]), 0, np.random.default_rng(0))


def bell_config(**kw):
    defaults = dict(
        n_qubits=2, n_layers=1, target=bell_ghz_target(2), n_steps=40, seed=17
    )
    defaults.update(kw)
    return TrainConfig(**defaults)


class TestTrainRun:
    def test_record_shape(self):
        rec = train_run(bell_config())
        assert rec.loss_trajectory.shape == (41,)
        assert rec.initial_theta.shape == (8,)
        assert rec.final_theta.shape == (8,)
        assert rec.run_seed == derive_run_seed(17, 0)
        assert not rec.failed
        assert rec.wall_time > 0
        assert 0 <= rec.tts <= 40

    def test_loss_decreases_from_start(self):
        rec = train_run(bell_config(n_steps=120))
        assert rec.loss_trajectory[-1] < rec.loss_trajectory[0]

    def test_identical_configs_reproduce_exactly(self):
        a = train_run(bell_config())
        b = train_run(bell_config())
        np.testing.assert_array_equal(a.loss_trajectory, b.loss_trajectory)
        np.testing.assert_array_equal(a.initial_theta, b.initial_theta)
        np.testing.assert_array_equal(a.final_theta, b.final_theta)
        assert a.tts == b.tts

    def test_run_index_changes_the_draw(self):
        a = train_run(bell_config())
        b = train_run(bell_config(run_index=1))
        assert not np.array_equal(a.initial_theta, b.initial_theta)

    def test_shot_mode_reproduces_exactly(self):
        a = train_run(bell_config(n_shots=100, n_steps=15))
        b = train_run(bell_config(n_shots=100, n_steps=15))
        np.testing.assert_array_equal(a.loss_trajectory, b.loss_trajectory)
        np.testing.assert_array_equal(a.final_theta, b.final_theta)

    def test_shot_mode_losses_are_empirical(self):
        rec = train_run(bell_config(n_shots=64, n_steps=10))
        # every recorded loss comes from a 64-shot histogram
        assert rec.loss_trajectory.shape == (11,)
        assert (rec.loss_trajectory >= 0).all()

    def test_diverging_run_is_reported_not_raised(self):
        rec = train_run(bell_config(learning_rate=math.inf, n_steps=10))
        assert rec.failed
        assert "non-finite" in rec.diagnostics
        assert rec.loss_trajectory.size < 11

    def test_record_serializes_to_json(self):
        rec = train_run(bell_config(n_steps=5))
        blob = json.dumps(rec.to_json())
        parsed = json.loads(blob)
        assert parsed["config"]["n_qubits"] == 2
        assert parsed["config"]["target"]["name"] == "Bell"
        assert len(parsed["loss_trajectory"]) == 6
        assert parsed["failed"] is False

    def test_sweep_point_indexing(self):
        records = run_sweep_point(bell_config(n_steps=5), 4)
        assert [r.config.run_index for r in records] == [0, 1, 2, 3]
        seeds = {r.run_seed for r in records}
        assert len(seeds) == 4


def test_config_epsilon_validation_surface():
    rec = train_run(bell_config(n_steps=5, epsilon=1e-8))
    assert isinstance(rec, RunRecord)
    with pytest.raises(ValueError):
        tts([1.0], -1.0, 5)
