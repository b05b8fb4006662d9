import argparse
from contextlib import contextmanager
from time import sleep
from typing import Any, Dict, Iterator, Optional

from pydantic import ValidationError
from sqlalchemy import text
from sqlalchemy.orm import Session

from framework.db import Database
from framework.errors import ConfigError, EngineError
from framework.serialization import read_json
from models.base import Base
from models.config import AnalysisConfig

max_retries = 5
retry_delay = 2
database: Optional[Database] = None


def setup_case_store(logger, database_url: Optional[str] = None) -> Database:
    global database
    for attempt in range(max_retries):
        try:
            logger.info(f"Attempting case store connection (attempt {attempt + 1}/{max_retries})")
            database = Database(Base, database_url)
            session = database.get_session()
            session.execute(text("SELECT 1"))
            session.close()
            logger.info("Case store connection established successfully")
            return database
        except Exception as e:
            logger.error(f"Case store connection failed: {str(e)}")
            if attempt == max_retries - 1:
                logger.error("Max retries reached, giving up")
                raise EngineError(f"cannot open case store: {e}")
            sleep(retry_delay)


def get_db() -> Iterator[Optional[Session]]:
    session = None
    if database:
        session = database.get_session()
    try:
        yield session
    finally:
        if session:
            session.close()


case_session = contextmanager(get_db)


# ---------- Analysis configuration ----------

def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _sigma_max(value: str) -> Any:
    if value == "computed":
        return value
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'computed' or a positive number")


def add_config_arguments(parser: argparse.ArgumentParser) -> None:
    """One flag per AnalysisConfig field, plus --config for a JSON file."""
    group = parser.add_argument_group("analysis configuration")
    group.add_argument("--config", help="AnalysisConfig JSON file")
    for name, field in AnalysisConfig.model_fields.items():
        if name == "sigma_max":
            kind = _sigma_max
        elif field.annotation is int:
            kind = int
        else:
            kind = float
        group.add_argument(
            _flag(name),
            dest=name,
            type=kind,
            default=None,
            help=f"default: {field.default}",
        )


def get_config(args: argparse.Namespace) -> AnalysisConfig:
    """
    Resolve the effective AnalysisConfig: flags > --config file > defaults.

    Raises:
        ConfigError: if the file or a flag is out of range or unknown.
    """
    values: Dict[str, Any] = {}
    config_path = getattr(args, "config", None)
    if config_path:
        data = read_json(config_path)
        if not isinstance(data, dict):
            raise ConfigError(f"{config_path} must contain a JSON object")
        values.update(data)
    for name in AnalysisConfig.model_fields:
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    try:
        return AnalysisConfig.model_validate(values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"invalid analysis configuration: {problems}")
