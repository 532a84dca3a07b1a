from pydantic_settings import BaseSettings, SettingsConfigDict
import pytz
from datetime import datetime


class Settings(BaseSettings):
    """
    Settings for the toolkit (CLI and HTTP surface).
    """
    # Debug
    DEBUG: bool = False
    LOG_LEVEL: str = 'WARNING'

    # Server
    HOST: str = 'localhost'
    PORT: int = 8000

    # Timezone used to stamp experiment artifacts
    TZ: str = 'UTC'

    # Engines
    ORACLE_LIMIT: int = 4 ** 12
    POLY_MAX_VERTICES: int = 16
    EXHAUSTIVE_TREE_MAX: int = 8

    # Monte Carlo
    MC_CHUNK_SIZE: int = 1 << 16
    DEFAULT_SAMPLES: int = 100_000

    # Output / workers
    JOBS: int = 1
    OUTPUT_FORMAT: str = 'json'

    def get_tz(self):
        """Get current time in configured timezone"""
        tz = pytz.timezone(self.TZ)
        return datetime.now(tz)

    model_config = SettingsConfigDict(
        env_file='.env',
        env_file_encoding='utf-8',
        env_prefix='MORSEFLOW_',
        extra="allow"
    )


settings = Settings()
