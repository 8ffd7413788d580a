"""JSON serialisation of report dataclasses and numpy values."""

import json
import math
from dataclasses import asdict, is_dataclass
from enum import Enum
from json import JSONEncoder
from pathlib import Path
from typing import Any, Union

import numpy as np


def _sanitise(obj: Any) -> Any:
    # json.dumps turns inf/nan into invalid JSON tokens, so map them first
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {str(k): _sanitise(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitise(v) for v in obj]
    return obj


class ReportEncoder(JSONEncoder):
    """
    Custom JSONEncoder to serialize report dataclasses, enums and numpy values.
    """

    def default(self, obj):
        # Handle dataclasses
        if is_dataclass(obj) and not isinstance(obj, type):
            return _sanitise(asdict(obj))

        if isinstance(obj, Enum):
            return obj.name.lower()

        # Handle numpy values
        if isinstance(obj, np.ndarray):
            return _sanitise(obj.tolist())
        if isinstance(obj, np.generic):
            return _sanitise(obj.item())

        if isinstance(obj, complex):
            return {"re": _sanitise(obj.real), "im": _sanitise(obj.imag)}

        if isinstance(obj, Path):
            return str(obj)

        # Let the base class handle other types
        return super().default(obj)


def to_json(obj: Any) -> str:
    """Converts a report object into a JSON string using the custom encoder."""
    if is_dataclass(obj) and not isinstance(obj, type):
        obj = asdict(obj)
    return json.dumps(
        _sanitise(obj), indent=4, cls=ReportEncoder, ensure_ascii=False, sort_keys=True
    )


def write_json(path: Union[str, Path], obj: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(obj) + "\n")
    return path


def read_json(path: Union[str, Path]) -> Any:
    return json.loads(Path(path).read_text())
