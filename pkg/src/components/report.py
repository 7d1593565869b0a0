"""
Run Reports
Deterministic JSON and CSV rendering of command results
"""

import io
import json
import math
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.17g"


class RunReport(BaseModel):
    """Result of one command: what was asked, what came out, and what to watch for"""

    command: str = Field(..., description="Subcommand name")
    inputs: Dict[str, Any] = Field(default_factory=dict, description="Parameters as given")
    outputs: Dict[str, Any] = Field(default_factory=dict, description="Results")
    warnings: List[str] = Field(default_factory=list, description="Caveats attached to the result")
    schema_version: int = Field(default=SCHEMA_VERSION)

    def to_json(self) -> str:
        return dumps_canonical(self.model_dump())

    def to_csv(self) -> str:
        return rows_to_csv(flatten_outputs(self))


def format_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = FLOAT_FORMAT % x
    if all(ch not in text for ch in ".eE"):
        text += ".0"
    return text


def _plain(value: Any) -> Any:
    """Map numpy scalars, complex numbers and tuples onto JSON-friendly values"""
    if isinstance(value, BaseModel):
        return _plain(value.model_dump())
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    return value


def _encode(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(key)}: {_encode(value[key], indent, level + 1)}"
            for key in sorted(value)
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in value):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in value) + "]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_canonical(obj: Any, indent: int = 2) -> str:
    """
    JSON with sorted keys and 17 significant digits per float

    The standard encoder prints the shortest round-trip repr, so floats are
    formatted here instead. Identical inputs give byte-identical text.
    """
    return _encode(_plain(obj), indent, 0) + "\n"


def flatten_outputs(report: RunReport) -> List[Dict[str, Any]]:
    """
    Project a report onto flat rows

    A list of mappings under outputs["rows"] becomes one row each; otherwise
    the scalar outputs form a single row. Nested values are JSON-encoded.
    """
    outputs = _plain(report.outputs)
    rows = outputs.get("rows")
    if isinstance(rows, list) and rows and all(isinstance(r, dict) for r in rows):
        source = rows
    else:
        source = [outputs]
    flat = []
    for row in source:
        flat_row = {"command": report.command}
        for key in sorted(row):
            value = row[key]
            if isinstance(value, (dict, list)):
                value = dumps_canonical(value, indent=0).replace("\n", "")
            flat_row[key] = value
        flat.append(flat_row)
    return flat


def rows_to_csv(rows: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    frame = pd.DataFrame(rows, columns=columns)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()
