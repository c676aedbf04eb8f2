from typing import Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, model_validator

Direction = Literal["rising", "falling"]


class TrialTrajectory(BaseModel):
    """
    Record of one simulated Bernoulli process.

    `checkpoints` has columns n, occurrences and ratio (= occurrences / n),
    strictly increasing in n. `outcomes` is None when the run was too long
    to keep every trial.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    outcomes: np.ndarray | None
    checkpoints: pd.DataFrame
    generator_seed: int
    process_label: str

    @property
    def trials(self) -> int:
        return int(self.checkpoints["n"].iloc[-1]) if len(self.checkpoints) else 0

    @property
    def final_ratio(self) -> float:
        return float(self.checkpoints["ratio"].iloc[-1])

    def running_ratio(self) -> np.ndarray:
        """Ratio after every trial; needs stored outcomes."""
        if self.outcomes is None:
            raise ValueError("outcomes were not retained for this trajectory")
        counts = np.cumsum(self.outcomes, dtype=np.int64)
        return counts / np.arange(1, len(counts) + 1, dtype=np.int64)


class DemonConfig(BaseModel):
    """Regime parameters of the oscillating coin."""

    model_config = ConfigDict(frozen=True)

    p_high: float = Field(default=0.6, ge=0.0, le=1.0)
    p_low: float = Field(default=0.4, ge=0.0, le=1.0)
    upper_threshold: float = Field(default=0.55, ge=0.0, le=1.0)
    lower_threshold: float = Field(default=0.45, ge=0.0, le=1.0)
    p_initial: float = Field(default=0.5, ge=0.0, le=1.0)
    warmup_trials: NonNegativeInt = 100

    @model_validator(mode="after")
    def _ordered_regimes(self):
        if not self.p_low < self.lower_threshold < self.upper_threshold < self.p_high:
            raise ValueError(
                "expected p_low < lower_threshold < upper_threshold < p_high, got "
                f"{self.p_low}, {self.lower_threshold}, {self.upper_threshold}, {self.p_high}"
            )
        return self


class CycleRecord(BaseModel):
    """One completed half-cycle: the trials from start_n (exclusive) to end_n (inclusive)."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=1)
    start_n: int = Field(ge=0)
    end_n: int
    direction: Direction

    @model_validator(mode="after")
    def _positive_length(self):
        if self.end_n <= self.start_n:
            raise ValueError(f"cycle end {self.end_n} must come after its start {self.start_n}")
        return self

    @property
    def length(self) -> int:
        return self.end_n - self.start_n
