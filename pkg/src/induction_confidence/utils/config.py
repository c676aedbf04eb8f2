import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from dotenv import load_dotenv, dotenv_values
from loguru import logger
from pydantic import BaseModel, ConfigDict

load_dotenv()


class Settings(BaseModel):
    """Environment driven settings. Every field is optional."""

    model_config = ConfigDict(frozen=True)

    log_level: str = "WARNING"
    log_dir: str | None = None
    source_date_epoch: int | None = None

    def now(self) -> datetime:
        """Current UTC time, or the pinned SOURCE_DATE_EPOCH when set."""
        if self.source_date_epoch is not None:
            return datetime.fromtimestamp(self.source_date_epoch, tz=timezone.utc)
        return datetime.now(timezone.utc)


def get_settings() -> Settings:
    epoch = os.getenv("SOURCE_DATE_EPOCH")
    return Settings(
        log_level=os.getenv("LOG_LEVEL", "WARNING"),
        log_dir=os.getenv("INDUCTION_LOG_DIR"),
        source_date_epoch=int(epoch) if epoch else None,
    )


def normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    Read a simple key=value file into a dict of flag defaults.

    Keys are flag names; dashes and underscores are interchangeable.
    Empty values are dropped so they never shadow built-in defaults.
    """
    values = dotenv_values(path)
    config = {normalize_key(k): v for k, v in values.items() if v not in (None, "")}
    logger.debug(f"Loaded {len(config)} config entries from {path}: {config}")
    return config
