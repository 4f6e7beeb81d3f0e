"""
Core configuration for the k-symplectic Lie-system toolkit
"""

from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings"""

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")

    PROJECT_NAME: str = "k-symplectic Lie-system toolkit"

    # Zero testing
    ZERO_TEST_TRIALS: int = 25
    ZERO_TEST_TOL: float = 1e-9
    ZERO_TEST_MAX_REJECTIONS_FACTOR: int = 100
    EXCLUSION_MARGIN: float = 1e-9
    DEFAULT_SEED: int = 20240611

    # Structure validation
    RANK_THRESHOLD: float = 1e-8
    STRUCTURE_SAMPLES: int = 100

    # Lie algebras
    MAX_LIE_DIM: int = 16
    RATIONAL_DENOMINATOR: int = 12
    RATIONAL_DENOMINATOR_RETRY: int = 48
    STABILITY_SAMPLES: int = 50
    STABILITY_TOL: float = 1e-8

    # Integration
    RK4_STEP: float = 1e-3
    T0: float = 0.0
    T1: float = 1.0
    DRIFT_TOL: float = 1e-6
    DEGENERACY_TOL: float = 1e-10
    MAX_PROLONG: int = 4

    # Output
    OUTPUT_DIR: str = "./output"
    REPORT_CACHE_FILE: str = "report_cache.json"

    # Logging Configuration
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_FILE: Optional[str] = None

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v):
        """Accept lower-case level names from the environment"""
        if isinstance(v, str):
            return v.strip().upper()
        return v

    @field_validator(
        "ZERO_TEST_TOL",
        "EXCLUSION_MARGIN",
        "RANK_THRESHOLD",
        "STABILITY_TOL",
        "RK4_STEP",
        "DRIFT_TOL",
        "DEGENERACY_TOL",
    )
    @classmethod
    def require_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("tolerances and steps must be positive")
        return v


# Create settings instance
settings = Settings()
