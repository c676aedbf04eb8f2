import math

import numpy as np
import pytest
from pydantic import ValidationError

from induction_confidence.simulation.demon import analyze_cycles, fit_cycle_growth, simulate_demon
from induction_confidence.simulation.models import CycleRecord, DemonConfig
from induction_confidence.utils.errors import DomainError

# p = 1 and p = 0 make every outcome certain, so cycle ends can be worked out by hand
SAWTOOTH = DemonConfig(p_high=1.0, p_low=0.0, p_initial=1.0, warmup_trials=0)


def test_sawtooth_cycle_ends():
    trajectory, cycles = simulate_demon(SAWTOOTH, max_trials=30, seed=0)
    assert [c.end_n for c in cycles] == [1, 3, 5, 7, 9, 12, 16, 20, 25]
    assert [c.direction for c in cycles] == ["rising", "falling"] * 4 + ["rising"]
    assert cycles[0].start_n == 0
    assert all(c.start_n == prev.end_n for prev, c in zip(cycles, cycles[1:]))
    assert [c.index for c in cycles] == list(range(1, 10))
    assert trajectory.trials == 30


def test_sawtooth_is_seed_independent():
    _, first = simulate_demon(SAWTOOTH, max_trials=30, seed=1)
    _, second = simulate_demon(SAWTOOTH, max_trials=30, seed=99)
    assert first == second


def test_warmup_ending_above_upper_threshold():
    config = DemonConfig(p_high=1.0, p_low=0.0, p_initial=1.0, warmup_trials=10)
    _, cycles = simulate_demon(config, max_trials=30, seed=0)
    assert (cycles[0].start_n, cycles[0].end_n, cycles[0].direction) == (0, 10, "rising")
    # 10 successes, then failures until 10 / n <= 0.45
    assert (cycles[1].end_n, cycles[1].direction) == (23, "falling")


def test_warmup_ending_below_lower_threshold():
    config = DemonConfig(p_high=1.0, p_low=0.0, p_initial=0.0, warmup_trials=20)
    _, cycles = simulate_demon(config, max_trials=25, seed=0)
    assert (cycles[0].end_n, cycles[0].direction) == (20, "falling")


def test_short_run_has_no_cycles():
    trajectory, cycles = simulate_demon(DemonConfig(), max_trials=10, seed=3)
    assert cycles == []
    assert trajectory.trials == 10
    frame = analyze_cycles(cycles)
    assert frame.empty
    assert list(frame.columns) == ["index", "direction", "start_n", "end_n", "length", "growth_ratio"]


@pytest.fixture(scope="module")
def default_run():
    return simulate_demon(DemonConfig(), max_trials=1_000_000, seed=7)


def _first_crossing(mask, start):
    """First trial count n > start whose running ratio is flagged in mask, or None."""
    hits = np.flatnonzero(mask[start:])
    return start + int(hits[0]) + 1 if len(hits) else None


def test_default_demon_never_settles(default_run):
    trajectory, cycles = default_run
    assert len(cycles) >= 6
    assert [c.direction for c in cycles[1:]] == [
        "falling" if prev.direction == "rising" else "rising" for prev in cycles[:-1]
    ]

    ratio = trajectory.running_ratio()
    late = ratio[100_000:]
    assert late.max() > 0.549
    assert late.min() < 0.451

    # after the first two half-cycles every one is longer than the last
    lengths = [c.length for c in cycles]
    assert all(later > earlier for earlier, later in zip(lengths[2:], lengths[3:]))
    frame = analyze_cycles(cycles)
    assert 2.0 <= float(np.median(frame["growth_ratio"].iloc[1:])) <= 4.0
    assert 2.0 <= fit_cycle_growth(cycles, skip=2) <= 4.0


def test_default_run_cycles_end_at_first_crossing(default_run):
    config = DemonConfig()
    trajectory, cycles = default_run
    ratio = trajectory.running_ratio()
    upper = ratio >= config.upper_threshold
    lower = ratio <= config.lower_threshold

    warmup = config.warmup_trials
    if upper[warmup - 1] or lower[warmup - 1]:
        assert cycles[0].end_n == warmup
    else:
        assert cycles[0].end_n == _first_crossing(upper, warmup)
    assert cycles[0].direction == ("rising" if upper[cycles[0].end_n - 1] else "falling")

    for cycle in cycles[1:]:
        mask = upper if cycle.direction == "rising" else lower
        assert cycle.end_n == _first_crossing(mask, cycle.start_n)
    # the unfinished half-cycle has not crossed yet
    pending = lower if cycles[-1].direction == "rising" else upper
    assert _first_crossing(pending, cycles[-1].end_n) is None


def test_demon_is_deterministic():
    first, first_cycles = simulate_demon(DemonConfig(), max_trials=50_000, seed=21, stride=10)
    second, second_cycles = simulate_demon(DemonConfig(), max_trials=50_000, seed=21, stride=10)
    assert first.checkpoints.equals(second.checkpoints)
    assert first_cycles == second_cycles


def test_checkpoint_ratios_match_outcomes():
    trajectory, _ = simulate_demon(DemonConfig(), max_trials=5_000, seed=4, stride=50)
    running = trajectory.running_ratio()
    n = trajectory.checkpoints["n"].to_numpy()
    np.testing.assert_allclose(trajectory.checkpoints["ratio"].to_numpy(), running[n - 1])


def test_analyze_cycles_growth_ratio():
    cycles = [
        CycleRecord(index=1, start_n=0, end_n=2, direction="rising"),
        CycleRecord(index=2, start_n=2, end_n=8, direction="falling"),
        CycleRecord(index=3, start_n=8, end_n=26, direction="rising"),
    ]
    frame = analyze_cycles(cycles)
    assert frame["length"].tolist() == [2, 6, 18]
    assert math.isnan(frame["growth_ratio"].iloc[0])
    assert frame["growth_ratio"].iloc[1:].tolist() == [3.0, 3.0]
    assert fit_cycle_growth(cycles) == pytest.approx(3.0, rel=1e-12)
    assert fit_cycle_growth(cycles[:1]) is None
    assert fit_cycle_growth(cycles, skip=2) is None


def test_config_validation():
    with pytest.raises(ValidationError):
        DemonConfig(p_high=0.5, upper_threshold=0.55)
    with pytest.raises(ValidationError):
        DemonConfig(lower_threshold=0.6, upper_threshold=0.55)
    with pytest.raises(ValidationError):
        CycleRecord(index=1, start_n=5, end_n=5, direction="rising")


def test_max_trials_domain():
    with pytest.raises(DomainError):
        simulate_demon(DemonConfig(), max_trials=0, seed=0)
