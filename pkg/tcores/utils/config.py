"""
Runtime settings for tcores.

Values come from the environment (optionally a ``.env`` file found by
python-dotenv) and fall back to the defaults below. Keep this module free of
heavy imports: the CLI reads it before anything else.
"""
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from dotenv import find_dotenv, load_dotenv

from tcores.exceptions import ValidationError

load_dotenv(find_dotenv(usecwd=True))


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(
            f"Invalid integer in env var {name}={raw!r}. Check your .env or deployment settings."
        ) from None
    if value < minimum:
        raise ValidationError(f"Env var {name} must be >= {minimum}, got {value}")
    return value


def _env_str(name: str, default: Optional[str]) -> Optional[str]:
    raw = os.getenv(name, "").strip()
    return raw or default


@dataclass
class Settings:
    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Exhaustive enumeration guard for exact_core_size_distribution
    budget: int = 10**8

    # Monte Carlo: fixed chunking keeps results independent of the worker count
    seed: int = 0
    chunk_size: int = 10_000
    workers: int = 1

    # Goddard quadrature: direct integration on [0, quad_periods * pi]
    quad_periods: int = 16

    # Default numeric tolerance for quadrature
    tol: float = 1e-8

    histogram_bins: int = field(default=60)

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from ``TCORES_*`` environment variables."""
        return cls(
            log_level=(_env_str("TCORES_LOG_LEVEL", "INFO") or "INFO").upper(),
            log_file=_env_str("TCORES_LOG_FILE", None),
            budget=_env_int("TCORES_BUDGET", 10**8, minimum=1),
            seed=_env_int("TCORES_SEED", 0),
            chunk_size=_env_int("TCORES_CHUNK_SIZE", 10_000, minimum=1),
            workers=_env_int("TCORES_WORKERS", 1, minimum=1),
            quad_periods=_env_int("TCORES_QUAD_PERIODS", 16, minimum=1),
            histogram_bins=_env_int("TCORES_HISTOGRAM_BINS", 60, minimum=1),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
