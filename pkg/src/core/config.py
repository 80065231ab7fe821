"""
Runtime settings read from the environment.
"""
import os
from pathlib import Path

from pydantic import BaseModel, Field, field_validator

REPO_ROOT = Path(__file__).resolve().parent.parent.parent

DEFAULT_SEED = 20240917


class Settings(BaseModel):
    log_level: str = "WARNING"
    seed: int = DEFAULT_SEED
    suites_dir: Path = Field(default_factory=lambda: REPO_ROOT / "suites")
    debug: bool = False

    @field_validator("log_level")
    @classmethod
    def _upper(cls, value: str) -> str:
        return value.upper()

    @classmethod
    def from_env(cls) -> "Settings":
        values = {
            "log_level": os.getenv("CONDALG_LOG_LEVEL"),
            "seed": os.getenv("CONDALG_SEED"),
            "suites_dir": os.getenv("CONDALG_SUITES_DIR"),
            "debug": os.getenv("CONDALG_DEBUG", "false").lower() == "true",
        }
        return cls(**{k: v for k, v in values.items() if v is not None})

    @property
    def effective_log_level(self) -> str:
        return "DEBUG" if self.debug else self.log_level


def get_settings() -> Settings:
    return Settings.from_env()
