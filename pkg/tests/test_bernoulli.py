import numpy as np
import pytest

from induction_confidence.simulation import recorder
from induction_confidence.simulation.bernoulli import (
    lln_confidence_trajectory,
    simulate_bernoulli,
    windowed_frequency,
)
from induction_confidence.simulation.replicas import replica_seeds, run_replicas
from induction_confidence.utils.errors import DomainError


def test_trajectory_shape_and_running_ratio():
    trajectory = simulate_bernoulli(0.3, 500, seed=1)
    checkpoints = trajectory.checkpoints
    assert list(checkpoints.columns) == ["n", "occurrences", "ratio"]
    assert checkpoints["n"].tolist() == list(range(1, 501))
    assert len(trajectory.outcomes) == 500
    assert trajectory.trials == 500
    np.testing.assert_allclose(trajectory.running_ratio(), checkpoints["ratio"].to_numpy())
    assert trajectory.checkpoints["occurrences"].iloc[-1] == int(trajectory.outcomes.sum())
    assert trajectory.generator_seed == 1
    assert trajectory.process_label == "bernoulli(p=0.3)"


def test_same_seed_same_run():
    first = simulate_bernoulli(0.5, 10_000, seed=42, stride=100)
    second = simulate_bernoulli(0.5, 10_000, seed=42, stride=100)
    assert first.checkpoints.equals(second.checkpoints)
    np.testing.assert_array_equal(first.outcomes, second.outcomes)


def test_stride_keeps_last_trial():
    trajectory = simulate_bernoulli(0.5, 1000, seed=3, stride=7)
    n = trajectory.checkpoints["n"].tolist()
    assert n[:3] == [7, 14, 21]
    assert n[-1] == 1000
    assert all(later > earlier for earlier, later in zip(n, n[1:]))


@pytest.mark.parametrize("p,expected", [(1.0, True), (0.0, False)])
def test_certain_outcomes(p, expected):
    trajectory = simulate_bernoulli(p, 50, seed=0)
    assert trajectory.outcomes.all() if expected else not trajectory.outcomes.any()
    assert trajectory.final_ratio == p


@pytest.mark.parametrize("p,seed", [(0.2, 11), (0.5, 12), (0.8, 13)])
def test_law_of_large_numbers(p, seed):
    trajectory = simulate_bernoulli(p, 100_000, seed=seed, stride=10_000)
    assert abs(trajectory.final_ratio - p) < 0.01
    confidence = lln_confidence_trajectory(trajectory, 0.05)
    assert list(confidence.columns) == ["n", "confidence"]
    assert confidence["n"].tolist() == trajectory.checkpoints["n"].tolist()
    assert confidence["confidence"].iloc[-1] > 0.99
    assert confidence["confidence"].iloc[-10:].is_monotonic_increasing


def test_confidence_grows_with_evidence():
    trajectory = simulate_bernoulli(0.5, 20_000, seed=5, stride=100)
    confidence = lln_confidence_trajectory(trajectory, 0.02)["confidence"]
    assert confidence.iloc[0] < 0.5
    assert confidence.iloc[-1] > 0.99


def test_epsilon_domain():
    trajectory = simulate_bernoulli(0.5, 10, seed=0)
    with pytest.raises(DomainError):
        lln_confidence_trajectory(trajectory, 0.0)
    with pytest.raises(DomainError):
        lln_confidence_trajectory(trajectory, 1.0)


@pytest.mark.parametrize("kwargs", [
    {"p": 1.5, "n": 10},
    {"p": 0.5, "n": 0},
    {"p": 0.5, "n": 10, "stride": 0},
])
def test_simulation_domain(kwargs):
    with pytest.raises(DomainError):
        simulate_bernoulli(seed=0, **kwargs)


def test_windowed_frequency():
    trajectory = simulate_bernoulli(0.5, 200, seed=8)
    window = windowed_frequency(trajectory, 10)
    assert list(window.columns) == ["n", "local_ratio"]
    outcomes = trajectory.outcomes
    assert window["local_ratio"].iloc[-1] == pytest.approx(outcomes[-10:].mean())
    assert window["local_ratio"].iloc[4] == pytest.approx(outcomes[:5].mean())
    with pytest.raises(DomainError):
        windowed_frequency(trajectory, 0)


def test_long_runs_keep_checkpoints_only(monkeypatch):
    monkeypatch.setattr(recorder, "MAX_STORED_OUTCOMES", 10)
    trajectory = simulate_bernoulli(0.5, 100, seed=0, stride=10)
    assert trajectory.outcomes is None
    assert trajectory.checkpoints["n"].tolist() == list(range(10, 101, 10))
    with pytest.raises(DomainError):
        windowed_frequency(trajectory, 5)
    with pytest.raises(ValueError):
        trajectory.running_ratio()


def test_replicas_keep_seed_order():
    seeds = replica_seeds(20, 4)
    assert seeds == [20, 21, 22, 23]
    results = run_replicas(lambda seed: simulate_bernoulli(0.5, 1000, seed=seed).final_ratio, seeds)
    expected = [simulate_bernoulli(0.5, 1000, seed=seed).final_ratio for seed in seeds]
    assert results == expected
    with pytest.raises(ValueError):
        replica_seeds(1, 0)
