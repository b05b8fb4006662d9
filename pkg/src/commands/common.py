import argparse
import logging
from typing import Optional, Type, TypeVar

from pydantic import BaseModel

from framework.serialization import load_model
from models.config import AnalysisConfig
from models.ontology import Ontology

M = TypeVar("M", bound=BaseModel)


def add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", help="write the JSON document here instead of stdout")


def add_pair(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ideal", required=True, help="ideal ontology JSON file")
    parser.add_argument("--actual", required=True, help="actual ontology JSON file")


def load_ontology(path: str) -> Ontology:
    return load_model(Ontology, path)


def load_optional(model: Type[M], path: Optional[str]) -> Optional[M]:
    return load_model(model, path) if path else None


def log_config(logger: logging.Logger, command: str, cfg: AnalysisConfig) -> None:
    logger.info({"event": "EffectiveConfig", "command": command, "config": cfg.model_dump(mode="json")})
