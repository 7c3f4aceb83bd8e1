"""
CLI configuration schema - per-invocation settings built from the global
settings overridden by command-line flags.
"""
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, field_validator

from config.settings import OUTPUT_FORMATS, VERIFY_BOUNDS, settings
from utils.validators import parse_t, validate_rational_text


class CliConfig(BaseModel):
    """Parameter t ("generic" or p/q), output format and bounds."""
    t: str = settings.default_t
    output_format: str = settings.output_format
    max_size: int = settings.max_size
    seed: int = settings.seed
    bounds: str = settings.verify_bounds

    @field_validator("t")
    @classmethod
    def validate_t(cls, v: str) -> str:
        """Exact rationals only; floats are rejected."""
        v = v.strip()
        if v.lower() == "generic":
            return "generic"
        ok, error = validate_rational_text(v)
        if not ok:
            raise ValueError(error)
        return v

    @field_validator("output_format")
    @classmethod
    def validate_format(cls, v: str) -> str:
        v = v.strip().lower()
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"Output format must be one of {', '.join(OUTPUT_FORMATS)}")
        return v

    @field_validator("bounds")
    @classmethod
    def validate_bounds(cls, v: str) -> str:
        v = v.strip().lower()
        if v not in VERIFY_BOUNDS:
            raise ValueError(f"Bounds must be one of {', '.join(VERIFY_BOUNDS)}")
        return v

    @field_validator("max_size")
    @classmethod
    def validate_max_size(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("--max-size must be positive")
        return v

    @property
    def t_value(self) -> Optional[Fraction]:
        """None for generic T."""
        return parse_t(self.t)

    class Config:
        json_schema_extra = {
            "example": {"t": "generic", "output_format": "text", "max_size": 6, "seed": 0, "bounds": "small"}
        }
