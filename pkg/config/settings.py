"""
Application settings and configuration management.
Values come from the environment (prefix PARCAT_) or a local .env file.
"""
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


OUTPUT_FORMATS = ("text", "json", "tsv")
VERIFY_BOUNDS = ("small", "full")


class Settings(BaseSettings):
    """Kernel configuration."""

    model_config = SettingsConfigDict(
        env_prefix="PARCAT_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"
    log_file: str = ""

    # Computation defaults
    default_t: str = "generic"
    output_format: str = "text"
    max_size: int = 6
    seed: int = 0

    # Interpolation of morphisms from Schur-Weyl matrices
    interpolation_max_degree: int = 8
    interpolation_extra_points: int = 2

    # Verification suites
    verify_bounds: str = "small"

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalize the log level name."""
        v = v.strip().upper()
        if v not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {v}")
        return v

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        """Only text, json and tsv output is supported."""
        v = v.strip().lower()
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"Output format must be one of {', '.join(OUTPUT_FORMATS)}")
        return v

    @field_validator("verify_bounds")
    @classmethod
    def validate_verify_bounds(cls, v: str) -> str:
        """Bounds preset for `parcat verify`."""
        v = v.strip().lower()
        if v not in VERIFY_BOUNDS:
            raise ValueError(f"Verify bounds must be one of {', '.join(VERIFY_BOUNDS)}")
        return v

    @field_validator("max_size", "interpolation_max_degree", "interpolation_extra_points")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Size bounds must be positive."""
        if v <= 0:
            raise ValueError("Bounds must be positive")
        return v


# Load settings
settings = Settings()
