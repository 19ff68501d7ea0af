from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Optional


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="SPECFORGE_", env_file=".env", extra="ignore")

    # App settings
    app_name: str = "specforge"
    log_level: str = "INFO"

    # Guardrails
    max_n: int = 1_048_576  # cap on the ladder product N1...NL
    max_entry: int = 2 ** 32
    enumerate_limit: int = 64

    # Numeric checks
    tol: float = 1e-10
    zero_eps: float = 1e-8
    separation: float = 1e-6

    # Verification defaults
    window: int = 64
    trunc: int = 24
    grid: int = 101

    # Worker pool (None -> available parallelism)
    threads: Optional[int] = None


settings = Settings()
