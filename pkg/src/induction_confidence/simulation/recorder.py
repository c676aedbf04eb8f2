import numpy as np
import pandas as pd

from induction_confidence.simulation.models import TrialTrajectory
from induction_confidence.utils.logging_config import logger

# Runs longer than this keep checkpoints only.
MAX_STORED_OUTCOMES = 10_000_000


class TrajectoryRecorder:
    """Accumulates outcome segments into checkpoints and, below the cap, full outcomes."""

    def __init__(self, planned_trials: int, stride: int, seed: int, label: str):
        if stride < 1:
            raise ValueError(f"stride must be at least 1, got {stride}")
        self.stride = stride
        self.seed = seed
        self.label = label
        self.n = 0
        self.count = 0
        self.store = planned_trials <= MAX_STORED_OUTCOMES
        if not self.store:
            logger.warning(
                f"{label}: {planned_trials} trials exceed {MAX_STORED_OUTCOMES}, keeping checkpoints only"
            )
        self._segments: list[np.ndarray] = []
        self._checkpoint_n: list[np.ndarray] = []
        self._checkpoint_counts: list[np.ndarray] = []

    def cumulative(self, segment: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Trial numbers and running counts the segment would produce, without recording it."""
        ns = self.n + np.arange(1, len(segment) + 1, dtype=np.int64)
        counts = self.count + np.cumsum(segment, dtype=np.int64)
        return ns, counts

    def add(self, segment: np.ndarray) -> None:
        if len(segment) == 0:
            return
        ns, counts = self.cumulative(segment)
        mask = ns % self.stride == 0
        if mask.any():
            self._checkpoint_n.append(ns[mask])
            self._checkpoint_counts.append(counts[mask])
        if self.store:
            self._segments.append(segment.astype(bool, copy=True))
        self.n = int(ns[-1])
        self.count = int(counts[-1])

    @property
    def ratio(self) -> float:
        return self.count / self.n if self.n else 0.0

    def finish(self) -> TrialTrajectory:
        n_values = np.concatenate(self._checkpoint_n) if self._checkpoint_n else np.empty(0, dtype=np.int64)
        counts = np.concatenate(self._checkpoint_counts) if self._checkpoint_counts else np.empty(0, dtype=np.int64)
        if self.n > 0 and (len(n_values) == 0 or n_values[-1] != self.n):
            n_values = np.append(n_values, np.int64(self.n))
            counts = np.append(counts, np.int64(self.count))

        checkpoints = pd.DataFrame({
            "n": n_values.astype(np.int64),
            "occurrences": counts.astype(np.int64),
            "ratio": counts / n_values if len(n_values) else np.empty(0, dtype=np.float64),
        })
        outcomes = None
        if self.store:
            outcomes = np.concatenate(self._segments) if self._segments else np.empty(0, dtype=bool)
        return TrialTrajectory(
            outcomes=outcomes,
            checkpoints=checkpoints,
            generator_seed=self.seed,
            process_label=self.label,
        )
