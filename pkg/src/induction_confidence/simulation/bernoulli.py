"""
I.i.d. Bernoulli processes and the law of large numbers read as a
confidence statement: at every checkpoint, the confidence that p lies in
[N_A/N - eps, N_A/N + eps].
"""
import numpy as np
import pandas as pd

from induction_confidence.inference.models import Evidence, ProbInterval
from induction_confidence.inference.posterior_core import confidence_on_interval
from induction_confidence.simulation.models import TrialTrajectory
from induction_confidence.simulation.recorder import TrajectoryRecorder
from induction_confidence.utils.errors import DomainError, require_probability
from induction_confidence.utils.logging_config import logger

BLOCK_SIZE = 1 << 20


def simulate_bernoulli(p: float, n: int, seed: int, stride: int = 1) -> TrialTrajectory:
    """
    Run n i.i.d. trials with success probability p.

    Args:
        p: success probability in [0, 1]
        n: number of trials, n >= 1
        seed: seed for numpy's PCG64 generator
        stride: checkpoint spacing; trial n is always a checkpoint

    Returns:
        TrialTrajectory labelled "bernoulli(p=...)"
    """
    p = require_probability(p, "p")
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if stride < 1:
        raise DomainError(f"stride must be at least 1, got {stride}")

    logger.debug(f"simulating {n} Bernoulli({p}) trials, seed={seed}, stride={stride}")
    rng = np.random.default_rng(seed)
    recorder = TrajectoryRecorder(n, stride, seed, f"bernoulli(p={p})")
    remaining = n
    while remaining > 0:
        size = min(BLOCK_SIZE, remaining)
        recorder.add(rng.random(size) < p)
        remaining -= size

    trajectory = recorder.finish()
    logger.info(f"bernoulli(p={p}) seed={seed}: final ratio {trajectory.final_ratio} after {n} trials")
    return trajectory


def lln_confidence_trajectory(trajectory: TrialTrajectory, epsilon: float) -> pd.DataFrame:
    """
    Confidence on [r - eps, r + eps] (clipped to [0, 1]) at each checkpoint.

    Returns:
        DataFrame with columns n and confidence
    """
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")

    rows = []
    for n, ratio in zip(trajectory.checkpoints["n"], trajectory.checkpoints["ratio"]):
        n = int(n)
        if n < 1:
            continue
        evidence = Evidence(trials=n, occurrences=int(round(ratio * n)))
        interval = ProbInterval(lo=max(0.0, ratio - epsilon), hi=min(1.0, ratio + epsilon))
        rows.append((n, confidence_on_interval(evidence, interval).confidence))
    return pd.DataFrame(rows, columns=["n", "confidence"])


def windowed_frequency(trajectory: TrialTrajectory, window: int) -> pd.DataFrame:
    """
    Success frequency over the trailing `window` trials at each checkpoint.

    This is what a short-term observer estimates; for the demon it sits
    near p_high or p_low inside a long cycle while the running ratio
    barely moves.
    """
    if window < 1:
        raise DomainError(f"window must be at least 1, got {window}")
    if trajectory.outcomes is None:
        raise DomainError("windowed frequency needs stored outcomes")

    counts = np.concatenate(([0], np.cumsum(trajectory.outcomes, dtype=np.int64)))
    n = trajectory.checkpoints["n"].to_numpy(dtype=np.int64)
    start = np.maximum(0, n - window)
    local = (counts[n] - counts[start]) / (n - start)
    return pd.DataFrame({"n": n, "local_ratio": local})
