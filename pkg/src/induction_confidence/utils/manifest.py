from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from induction_confidence import __version__
from induction_confidence.utils.config import Settings, get_settings


class RunManifest(BaseModel):
    """What produced an output: command, parameters, seed and version."""

    model_config = ConfigDict(frozen=True)

    command: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    seed: int | None = None
    generator: str | None = None
    artifact_version: str = __version__
    timestamp: str


def build_manifest(command: str, parameters: dict[str, Any], seed: int | None = None,
                   generator: str | None = None, settings: Settings | None = None) -> RunManifest:
    settings = settings or get_settings()
    timestamp = settings.now().strftime("%Y-%m-%dT%H:%M:%SZ")
    return RunManifest(
        command=command,
        parameters=parameters,
        seed=seed,
        generator=generator,
        timestamp=timestamp,
    )
