"""
Application settings and configuration management.
"""
from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

_LOG_LEVELS = {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}
_LADYBUG_RULES = {"right", "left", "alternating"}
_SURGERY_ORDERS = {"innermost", "outermost"}


class Settings(BaseSettings):
    # Application
    APP_NAME: str = "Khovanov Tangle Invariants"
    APP_ENV: str = "development"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Path = Path("logs/khovanov.log")
    LOG_ROTATION: str = "10 MB"
    LOG_RETENTION: str = "10 days"

    # Computation
    JOBS: int = Field(default=1, ge=1, description="Upper bound on worker processes.")
    VERIFY: bool = Field(
        default=False,
        description="Verify complexes on construction and SNF certificates on every call.",
    )
    HOCHSCHILD_DEGREE: int = Field(default=2, ge=0)
    LADYBUG_RULE: str = "right"
    SURGERY_ORDER: str = "innermost"

    # Paths
    FIXTURES_DIR: Path = Path("fixtures")
    EXPORT_DIR: Path = Path("exports")

    @field_validator("LOG_LEVEL")
    def validate_log_level(cls, v):
        level = v.upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"LOG_LEVEL should be one of {sorted(_LOG_LEVELS)}. Got: {v}")
        return level

    @field_validator("LADYBUG_RULE")
    def validate_ladybug_rule(cls, v):
        if v not in _LADYBUG_RULES:
            raise ValueError(f"LADYBUG_RULE should be one of {sorted(_LADYBUG_RULES)}. Got: {v}")
        return v

    @field_validator("SURGERY_ORDER")
    def validate_surgery_order(cls, v):
        if v not in _SURGERY_ORDERS:
            raise ValueError(f"SURGERY_ORDER should be one of {sorted(_SURGERY_ORDERS)}. Got: {v}")
        return v

    class Config:
        env_file = ".env"
        case_sensitive = True


# Create settings instance
settings = Settings()


def get_settings() -> Settings:
    return settings
