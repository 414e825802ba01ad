"""
Configuración de la aplicación usando Pydantic Settings
"""
from pydantic_settings import BaseSettings
from typing import List


class Settings(BaseSettings):
    """Configuración de la aplicación"""

    # Información de la aplicación
    APP_NAME: str = "LorentzVol"
    APP_VERSION: str = "1.0.0"
    SCHEMA_VERSION: str = "1"

    # Entorno
    ENVIRONMENT: str = "development"
    LOG_LEVEL: str = "INFO"

    # CORS
    CORS_ORIGINS: str = "http://localhost:3000,http://localhost:5173"

    # Aritmética de precisión configurable (bits de mantisa)
    LORENTZVOL_BITS: int = 256

    # Enumeración de composiciones: |K_n| = 2^(n-1)
    COMPOSITION_CAP: int = 24

    # Monte Carlo
    MC_SAMPLES: int = 1_000_000
    MC_SEED: int = 0
    MC_CONFIDENCE: float = 0.99
    MC_CHUNK_SIZE: int = 65_536
    MC_WORKERS: int = 4
    MC_MAX_DIMENSION: int = 20
    MC_MIN_HITS: int = 100

    # Números de entropía
    CODE_RETRY_BUDGET: int = 200_000
    ENTROPY_C1: float = 4.0
    ENTROPY_C2: float = 8.0
    ENTROPY_STEP3_GAMMA: int = 2

    @property
    def cors_origins_list(self) -> List[str]:
        """Convierte CORS_ORIGINS string a lista"""
        return [origin.strip() for origin in self.CORS_ORIGINS.split(",")]

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"  # Permitir variables adicionales sin error


# Instancia global de configuración
settings = Settings()
