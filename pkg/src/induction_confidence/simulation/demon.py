"""
The demon coin.

After an optional warmup of fair-looking flips the demon biases the coin
towards heads (p_high) until the running ratio reaches the upper
threshold, then towards tails (p_low) until it falls to the lower one,
and so on. The running ratio never converges, but each half-cycle has to
move a larger N, so cycle lengths grow geometrically (about x3 for the
default 0.4/0.45/0.55/0.6 setting).
"""
import numpy as np
import pandas as pd

from induction_confidence.simulation.models import CycleRecord, DemonConfig, Direction, TrialTrajectory
from induction_confidence.simulation.recorder import TrajectoryRecorder
from induction_confidence.utils.errors import DomainError
from induction_confidence.utils.logging_config import logger

BLOCK_SIZE = 1 << 16

# regimes
INITIAL = "initial"
RISING = "rising"
FALLING = "falling"


class _DemonRun:
    """State machine over a block-drawn uniform stream; outcome = uniform < current p."""

    def __init__(self, config: DemonConfig, max_trials: int, seed: int, stride: int):
        self.config = config
        self.max_trials = max_trials
        self.rng = np.random.default_rng(seed)
        self.recorder = TrajectoryRecorder(max_trials, stride, seed, "demon")
        self.regime = INITIAL
        self.cycle_start = 0
        self.cycles: list[CycleRecord] = []

    def probability(self) -> float:
        if self.regime == RISING:
            return self.config.p_high
        if self.regime == FALLING:
            return self.config.p_low
        return self.config.p_initial

    def close_cycle(self, direction: Direction) -> None:
        end_n = self.recorder.n
        self.cycles.append(CycleRecord(
            index=len(self.cycles) + 1,
            start_n=self.cycle_start,
            end_n=end_n,
            direction=direction,
        ))
        logger.debug(f"demon cycle {len(self.cycles)} {direction}: {self.cycle_start} -> {end_n}")
        self.cycle_start = end_n
        self.regime = FALLING if direction == "rising" else RISING

    def trigger(self, ratios: np.ndarray) -> tuple[np.ndarray, Direction | None]:
        """Boolean mask of threshold crossings for the current regime."""
        upper = ratios >= self.config.upper_threshold
        lower = ratios <= self.config.lower_threshold
        if self.regime == RISING:
            return upper, "rising"
        if self.regime == FALLING:
            return lower, "falling"
        return upper | lower, None

    def end_warmup(self) -> None:
        """Check both thresholds once the warmup is over; otherwise start pushing up."""
        ratio = self.recorder.ratio
        if ratio >= self.config.upper_threshold:
            self.close_cycle("rising")
        elif ratio <= self.config.lower_threshold:
            self.close_cycle("falling")
        else:
            self.regime = RISING

    def consume(self, uniforms: np.ndarray) -> None:
        position = 0
        warmup = self.config.warmup_trials
        while position < len(uniforms):
            block = uniforms[position:]
            if self.regime == INITIAL and self.recorder.n < warmup:
                block = block[: warmup - self.recorder.n]
                self.recorder.add(block < self.probability())
                position += len(block)
                if self.recorder.n == warmup:
                    self.end_warmup()
                continue

            outcomes = block < self.probability()
            ns, counts = self.recorder.cumulative(outcomes)
            mask, direction = self.trigger(counts / ns)
            hits = np.flatnonzero(mask)
            if len(hits) == 0:
                self.recorder.add(outcomes)
                position += len(block)
                continue

            stop = int(hits[0]) + 1
            self.recorder.add(outcomes[:stop])
            position += stop
            if direction is None:
                ratio = self.recorder.ratio
                direction = "rising" if ratio >= self.config.upper_threshold else "falling"
            self.close_cycle(direction)

    def run(self) -> tuple[TrialTrajectory, list[CycleRecord]]:
        remaining = self.max_trials
        while remaining > 0:
            size = min(BLOCK_SIZE, remaining)
            self.consume(self.rng.random(size))
            remaining -= size
        return self.recorder.finish(), self.cycles


def simulate_demon(config: DemonConfig, max_trials: int, seed: int,
                   stride: int = 1) -> tuple[TrialTrajectory, list[CycleRecord]]:
    """
    Run the demon coin for max_trials trials.

    Trials 1..warmup_trials use p_initial without threshold checks. At
    trial warmup_trials (or from trial 1 when there is no warmup) the first
    crossing of either threshold closes the first cycle; a warmup that ends
    between the thresholds hands over to p_high. Afterwards the regime
    alternates at every first crossing: ratio >= upper_threshold ends a
    rising cycle, ratio <= lower_threshold ends a falling one.

    Returns:
        (trajectory, completed cycles); the cycle list may be empty
    """
    if max_trials < 1:
        raise DomainError(f"max_trials must be at least 1, got {max_trials}")

    logger.debug(f"simulating demon for {max_trials} trials, seed={seed}, config={config}")
    trajectory, cycles = _DemonRun(config, max_trials, seed, stride).run()
    if not cycles:
        logger.warning(f"demon completed no cycle within {max_trials} trials")
    logger.info(f"demon seed={seed}: {len(cycles)} cycles in {max_trials} trials")
    return trajectory, cycles


def analyze_cycles(cycles: list[CycleRecord]) -> pd.DataFrame:
    """
    Cycle lengths and their ratio to the previous cycle.

    Returns:
        DataFrame with columns index, direction, start_n, end_n, length,
        growth_ratio (NaN for the first cycle)
    """
    columns = ["index", "direction", "start_n", "end_n", "length", "growth_ratio"]
    if not cycles:
        return pd.DataFrame(columns=columns)

    lengths = np.array([c.length for c in cycles], dtype=np.int64)
    growth = np.full(len(cycles), np.nan)
    growth[1:] = lengths[1:] / lengths[:-1]
    return pd.DataFrame({
        "index": [c.index for c in cycles],
        "direction": [c.direction for c in cycles],
        "start_n": [c.start_n for c in cycles],
        "end_n": [c.end_n for c in cycles],
        "length": lengths,
        "growth_ratio": growth,
    }, columns=columns)


def fit_cycle_growth(cycles: list[CycleRecord], skip: int = 0) -> float | None:
    """
    Geometric growth factor of cycle lengths from a line fit of log(length) on index.

    Args:
        cycles: completed cycles
        skip: number of leading cycles to leave out of the fit

    Returns:
        exp(slope), or None with fewer than two cycles left
    """
    used = cycles[skip:]
    if len(used) < 2:
        return None
    index = np.array([c.index for c in used], dtype=np.float64)
    lengths = np.array([c.length for c in used], dtype=np.float64)
    slope, _ = np.polyfit(index, np.log(lengths), 1)
    return float(np.exp(slope))
