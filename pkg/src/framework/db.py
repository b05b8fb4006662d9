"""
Case Store Initialization and Session Management

This module provides:
- A `Database` wrapper that owns the SQLAlchemy engine and session factory
  for the historical failure-case store.
- URL resolution that supports both local (sqlite) and shared (PostgreSQL)
  stores.

URL resolution order:
    1. `database_url` argument (e.g. from `--store`)
    2. CASE_DB_URL       - Full SQLAlchemy database URL (e.g., sqlite:///./cases.db)
    3. PostgreSQL environment variables:
        POSTGRES_USER     - PostgreSQL username
        POSTGRES_PASSWORD - PostgreSQL password
        POSTGRES_HOST     - Hostname or IP address of the database server
        POSTGRES_PORT     - Database port
        POSTGRES_DB       - Database name
"""

import logging
import os
from typing import Optional

from opentelemetry.instrumentation.sqlalchemy import SQLAlchemyInstrumentor
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

logger = logging.getLogger(__name__)

POSTGRES_KEYS = ("POSTGRES_USER", "POSTGRES_PASSWORD", "POSTGRES_HOST", "POSTGRES_PORT", "POSTGRES_DB")


def resolve_database_url(database_url: Optional[str] = None) -> str:
    if database_url:
        return database_url

    env_url = os.getenv("CASE_DB_URL")
    if env_url:
        return env_url

    values = {key: os.getenv(key) for key in POSTGRES_KEYS}
    missing_vars = [key for key, value in values.items() if not value]
    if missing_vars:
        raise EnvironmentError(
            f"Missing required environment variables: {', '.join(missing_vars)}"
        )

    return (
        f"postgresql+psycopg2://{values['POSTGRES_USER']}:"
        f"{values['POSTGRES_PASSWORD']}@"
        f"{values['POSTGRES_HOST']}:"
        f"{values['POSTGRES_PORT']}/"
        f"{values['POSTGRES_DB']}"
    )


class Database:
    # Base is passed in so the ORM metadata lives with the models package
    def __init__(self, base, database_url: Optional[str] = None):
        self._base = base
        self.url = resolve_database_url(database_url)
        self._engine = create_engine(self.url)
        SQLAlchemyInstrumentor().instrument(engine=self._engine)
        self._session = sessionmaker(bind=self._engine)
        self._base.metadata.create_all(self._engine)

    def get_session(self):
        return self._session()

    def dispose(self) -> None:
        self._engine.dispose()
