"""
JSON Input / Output

All documents the engine reads or writes pass through here so that:
- parse failures (bad JSON, unknown keys, wrong types) surface as ParseError
- emitted JSON is canonical: sorted keys, two-space indent, trailing newline
"""

import json
import sys
from pathlib import Path
from typing import Any, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from framework.errors import ParseError

M = TypeVar("M", bound=BaseModel)


def read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ParseError(f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise ParseError(f"failed to parse JSON file {path}: {e}")


def parse_model(model: Type[M], data: Any, source: str = "<data>") -> M:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in e.errors()
        )
        raise ParseError(f"{source} does not match {model.__name__}: {problems}")


def load_model(model: Type[M], path: str) -> M:
    return parse_model(model, read_json(path), source=path)


def to_jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json", by_alias=True)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    return value


def dump_json(value: Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(value: Any, output: Optional[str] = None) -> None:
    """Write a document to `output` (a path) or to stdout when no path is given."""
    text = dump_json(value)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
