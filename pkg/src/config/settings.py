import math

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configurações da aplicação usando Pydantic Settings."""

    # Logging
    LOG_LEVEL: str = "INFO"

    # Paralelismo (DEFORMKIT_THREADS)
    THREADS: int = 4

    # Toro
    PRUNE_THRESHOLD: float = 1e-15
    EXTENDED_PRECISION_THRESHOLD: float = 1e4
    POWER_MAX_ITER: int = 200
    POWER_TOL: float = 1e-10

    # Recobrimentos
    PARTITION_RESIDUAL_BOUND: float = 1e-6
    PARTITION_GRID_FACTOR: int = 4096
    COVERING_SLACK: float = 1e-9

    # Plano de Moyal
    SCHWARTZ_DECAY_TOLERANCE: float = 1e-8
    SUPPORT_TOLERANCE: float = 1e-8
    DIRECT_ORACLE_MAX_POINTS: int = 4096
    DEFAULT_M: int = 256
    DEFAULT_L: float = 40 * math.pi

    # Torre / periodização
    WRAP_MARGIN: float = 1.0
    MATCH_TOLERANCE: float = 0.01

    model_config = SettingsConfigDict(
        env_prefix="DEFORMKIT_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()
