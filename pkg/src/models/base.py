from typing import Tuple

from pydantic import BaseModel, ConfigDict
from sqlalchemy.orm import declarative_base

Base = declarative_base()

# (dimension, node id)
NodeRef = Tuple[str, str]
# (dimension, source, target)
EdgeRef = Tuple[str, str, str]


class FrozenModel(BaseModel):
    """Immutable schema base: unknown keys are rejected, instances are hashable values."""

    model_config = ConfigDict(extra="forbid", frozen=True)
