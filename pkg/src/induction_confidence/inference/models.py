from pydantic import BaseModel, ConfigDict, Field, model_validator


class Evidence(BaseModel):
    """Event A occurred `occurrences` times in `trials` Bernoulli trials."""

    model_config = ConfigDict(frozen=True)

    trials: int = Field(ge=0)
    occurrences: int = Field(ge=0)

    @model_validator(mode="after")
    def _occurrences_within_trials(self):
        if self.occurrences > self.trials:
            raise ValueError(
                f"occurrences ({self.occurrences}) cannot exceed trials ({self.trials})"
            )
        return self

    @property
    def failures(self) -> int:
        return self.trials - self.occurrences

    @property
    def shape(self) -> tuple[int, int]:
        """Beta(a, b) shape of the uniform-prior posterior."""
        return self.occurrences + 1, self.failures + 1

    def mirrored(self) -> "Evidence":
        return Evidence(trials=self.trials, occurrences=self.failures)

    @classmethod
    def all_success(cls, n: int) -> "Evidence":
        return cls(trials=n, occurrences=n)


class ProbInterval(BaseModel):
    """Closed interval [lo, hi] inside [0, 1]."""

    model_config = ConfigDict(frozen=True)

    lo: float = Field(ge=0.0, le=1.0)
    hi: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _ordered(self):
        if self.lo > self.hi:
            raise ValueError(f"interval lower bound {self.lo} exceeds upper bound {self.hi}")
        return self

    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def mirrored(self) -> "ProbInterval":
        return ProbInterval(lo=1.0 - self.hi, hi=1.0 - self.lo)

    @classmethod
    def unit(cls) -> "ProbInterval":
        return cls(lo=0.0, hi=1.0)


class ConfidenceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    evidence: Evidence
    interval: ProbInterval
    confidence: float = Field(ge=0.0, le=1.0)


class ConfirmationReport(BaseModel):
    """Degree of confirmation C = max_d (1 - d) * c*(d) and where it is attained."""

    model_config = ConfigDict(frozen=True)

    evidence: Evidence
    best_width: float = Field(ge=0.0, le=1.0)
    best_interval: ProbInterval
    best_confidence: float = Field(ge=0.0, le=1.0)
    degree: float = Field(ge=0.0, le=1.0)


class SuccessionEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    evidence: Evidence
    probability_next: float = Field(gt=0.0, lt=1.0)


class UrnExperimentReport(BaseModel):
    """Monte-Carlo run of Laplace's urn, conditioned on the evidence by rejection."""

    model_config = ConfigDict(frozen=True)

    evidence: Evidence
    attempts: int
    accepted: int
    estimate: float
    standard_error: float
    generator: str
    seed: int
