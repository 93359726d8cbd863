import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

load_dotenv()

ENV_PREFIX = 'ZETA_'


class Settings(BaseModel):
    """Parâmetros de execução lidos do ambiente (.env), variáveis ZETA_<CAMPO>"""

    db_path: str = 'zeta_results.db'
    threads: int = Field(default=1, ge=1)
    oracle_max_candidates: int = Field(default=2_000_000, ge=1)
    bruteforce_max_order: int = Field(default=6561, ge=1)
    cross_check: bool = True
    log_level: str = 'INFO'

    @field_validator('log_level')
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.strip().upper()

    @classmethod
    def from_env(cls) -> 'Settings':
        values = {
            name: os.environ[ENV_PREFIX + name.upper()]
            for name in cls.model_fields
            if ENV_PREFIX + name.upper() in os.environ
        }
        return cls.model_validate(values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings.from_env()
    logging.getLogger().setLevel(settings.log_level)
    return settings
