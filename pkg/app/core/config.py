from __future__ import annotations

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.core.errors import ResourceCapExceededError


def _parse_float_list(raw: str) -> tuple[float, ...]:
    values = tuple(float(part) for part in raw.split(",") if part.strip())
    if not values:
        raise ValueError("expected a comma separated list of numbers")
    return values


class Settings(BaseSettings):
    app_env: str | None = Field(default=None, validation_alias=AliasChoices("APP_ENV"))

    # resource caps (inclusive upper bounds on n / word length)
    goe_max_n: int = Field(default=12, ge=2, validation_alias=AliasChoices("GOE_MAX_N"))
    colored_max_n: int = Field(default=10, ge=2, validation_alias=AliasChoices("COLORED_MAX_N"))
    wishart_max_n: int = Field(default=10, ge=1, validation_alias=AliasChoices("WISHART_MAX_N"))
    enumeration_max_n: int = Field(default=14, ge=2, validation_alias=AliasChoices("ENUMERATION_MAX_N"))
    mobius_brute_max_n: int = Field(default=9, ge=1, validation_alias=AliasChoices("MOBIUS_BRUTE_MAX_N"))
    series_max_order: int = Field(default=40, ge=2, validation_alias=AliasChoices("SERIES_MAX_ORDER"))
    lab_max_n: int = Field(default=8, ge=2, validation_alias=AliasChoices("LAB_MAX_N"))

    # numerics
    stieltjes_eps: str = Field(default="1e-3,1e-4,1e-5", validation_alias=AliasChoices("STIELTJES_EPS"))
    atom_heights: str = Field(
        default="1e-2,1e-3,1e-4,1e-5,1e-6",
        validation_alias=AliasChoices("ATOM_HEIGHTS"),
    )
    quad_tol: float = Field(default=1e-11, gt=0, validation_alias=AliasChoices("QUAD_TOL"))

    # sampling
    sampling_batch: int = Field(default=2000, ge=1, validation_alias=AliasChoices("SAMPLING_BATCH"))
    default_seed: int = Field(default=20240101, validation_alias=AliasChoices("DEFAULT_SEED"))

    # HTTP surface
    cache_maxsize: int = Field(default=128, ge=1, validation_alias=AliasChoices("CACHE_MAXSIZE"))
    cache_ttl_seconds: float = Field(default=3600.0, gt=0, validation_alias=AliasChoices("CACHE_TTL_SECONDS"))
    cors_origins: str | None = Field(default=None, validation_alias=AliasChoices("CORS_ORIGINS"))

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    @property
    def stieltjes_eps_schedule(self) -> tuple[float, ...]:
        """Imaginary offsets for Stieltjes inversion, largest first."""
        return tuple(sorted(_parse_float_list(self.stieltjes_eps), reverse=True))

    @property
    def atom_height_schedule(self) -> tuple[float, ...]:
        return tuple(sorted(_parse_float_list(self.atom_heights), reverse=True))

    @property
    def cors_origin_list(self) -> list[str]:
        if not self.cors_origins:
            return []
        return [origin.strip() for origin in self.cors_origins.split(",") if origin.strip()]


settings = Settings()


def enforce_cap(what: str, value: int, field: str) -> None:
    """Raise ResourceCapExceededError when value exceeds the configured cap."""
    cap = getattr(settings, field)
    if value > cap:
        raise ResourceCapExceededError(what, value, cap, field.upper())
