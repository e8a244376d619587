"""
Configuration management for factn
Centralized settings read from FACTN_* environment variables and .env
"""
import logging
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Runtime settings; none of them changes a mathematical result"""

    model_config = SettingsConfigDict(
        env_prefix="FACTN_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )

    # Parallelism
    THREADS: int = 1

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: str = ""
    LOG_FORMAT: str = "text"

    # Randomized checks
    DEFAULT_SAMPLES: int = 20
    MAX_RANK: int = 2

    @field_validator("THREADS", "DEFAULT_SAMPLES", "MAX_RANK")
    @classmethod
    def validate_positive(cls, v):
        """Counts must be at least 1"""
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def validate_log_level(cls, v):
        """Accept any stdlib level name, case-insensitive"""
        name = str(v).strip().upper()
        if not isinstance(logging.getLevelName(name), int):
            raise ValueError(f"unknown log level '{v}'")
        return name

    @field_validator("LOG_FORMAT")
    @classmethod
    def validate_log_format(cls, v):
        """Either plain text or JSON lines"""
        if v not in ("text", "json"):
            raise ValueError("LOG_FORMAT must be 'text' or 'json'")
        return v

    @property
    def log_file_path(self) -> Optional[str]:
        """Log file or None when logging to stderr only"""
        return self.LOG_FILE.strip() or None


@lru_cache
def get_settings() -> Settings:
    """Cached settings instance; raises pydantic.ValidationError on bad values"""
    return Settings()
