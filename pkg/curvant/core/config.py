# curvant/core/config.py
from pathlib import Path
from typing import Union

from pydantic import ValidationError as PydanticValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict, TomlConfigSettingsSource

from curvant.exceptions import ConfigurationError
from curvant.schemas.run import RunConfig


class Settings(BaseSettings):
    """
    Process settings loaded from environment variables.

    Values come from ``CURVANT_``-prefixed environment variables or a .env
    file. Run-specific parameters live in the TOML run config instead.
    """
    LOG_LEVEL: str = "INFO"
    OUTPUT_DIR: str = "runs"
    FILL_WORKERS: int = 1
    FILL_CHUNK_ROWS: int = 512

    model_config = SettingsConfigDict(
        env_prefix="CURVANT_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """
    Read a TOML run configuration.

    Sections map onto ``RunConfig`` fields: ``[tube]``, ``[bounds]`` (with
    ``[bounds.d1]`` style sub-tables), ``[solver]``, ``[rl]``, ``[design]``
    plus top-level ``budget``, ``seed`` and ``environment`` keys.

    Raises:
        ConfigurationError: If the file is missing, is not valid TOML, or
            fails validation.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Config file not found: {path}")
    try:
        source = TomlConfigSettingsSource(Settings, toml_file=path)
    except ValueError as exc:  # tomllib.TOMLDecodeError
        raise ConfigurationError(f"Malformed config file {path}: {exc}") from exc
    try:
        return RunConfig.model_validate(source.toml_data)
    except PydanticValidationError as exc:
        messages = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise ConfigurationError(f"Invalid config file {path}: {messages}") from exc
