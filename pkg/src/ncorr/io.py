"""State file and report serialization.

State files are JSON with explicit real/imaginary pairs; all floating-point
numbers in files, reports and CSV output are rendered with 17 significant
digits so a parsed value is bit-identical to the emitted one.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import MalformedInputError
from .linalg import BipartiteDims, DensityMatrix


def format_float(x: float) -> str:
    """Decimal rendering that round-trips the double exactly."""
    x = float(x)
    if not math.isfinite(x):
        raise MalformedInputError(f"cannot serialize non-finite value {x}")
    return format(x, ".17g")


def _dump(obj, indent: int) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1)}' for k, v in obj.items())
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple)) for v in obj)
        if flat:
            return "[" + ", ".join(_dump(v, indent) for v in obj) + "]"
        items = ",\n".join(f"{pad}  {_dump(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise MalformedInputError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    return _dump(obj, 0) + "\n"


def state_file_text(state: DensityMatrix) -> str:
    """Serialize a state to the on-disk JSON schema."""
    matrix = [
        [[z.real, z.imag] for z in row]
        for row in state.mat
    ]
    return dumps({"dims": [state.dims.dA, state.dims.dB], "matrix": matrix})


def write_state_file(path: str, state: DensityMatrix) -> None:
    with open(path, "w", newline="\n") as fp:
        fp.write(state_file_text(state))


def parse_state_text(text: str) -> DensityMatrix:
    """Parse and validate the state file schema, then the physics."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"invalid state file: {e.msg} at line {e.lineno} column {e.colno}") from e
    if not isinstance(doc, dict):
        raise MalformedInputError("state file must be a JSON object")
    for key in ("dims", "matrix"):
        if key not in doc:
            raise MalformedInputError(f"state file is missing the {key!r} field")
    dims_field = doc["dims"]
    if (
        not isinstance(dims_field, list)
        or len(dims_field) != 2
        or not all(isinstance(d, int) and d >= 1 for d in dims_field)
    ):
        raise MalformedInputError(f"'dims' must be a pair of positive integers, got {dims_field!r}")
    dims = BipartiteDims(dims_field[0], dims_field[1])
    d = dims.total
    rows = doc["matrix"]
    if not isinstance(rows, list) or len(rows) != d:
        raise MalformedInputError(f"'matrix' must have {d} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}")
    mat = np.zeros((d, d), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise MalformedInputError(f"matrix row {i} must have {d} entries, got {len(row) if isinstance(row, list) else type(row).__name__}")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
            ):
                raise MalformedInputError(f"matrix entry ({i}, {j}) must be a [re, im] pair of numbers")
            mat[i, j] = complex(entry[0], entry[1])
    return DensityMatrix(mat, dims)


def read_state_file(path: str) -> DensityMatrix:
    try:
        with open(path) as fp:
            text = fp.read()
    except OSError as e:
        raise MalformedInputError(f"cannot read state file {path}: {e.strerror}") from e
    return parse_state_text(text)


@dataclass(frozen=True)
class Report:
    """Machine-readable result document; sections are plain JSON-shaped dicts."""

    version: str
    kind: str  # "measure" | "detect"
    dims: list
    tolerances: dict
    measure: dict | None = None
    detection: dict | None = None

    def to_json(self) -> str:
        doc = {
            "version": self.version,
            "kind": self.kind,
            "dims": list(self.dims),
            "tolerances": dict(self.tolerances),
        }
        if self.measure is not None:
            doc["measure"] = self.measure
        if self.detection is not None:
            doc["detection"] = self.detection
        return dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise MalformedInputError(f"invalid report: {e.msg} at line {e.lineno} column {e.colno}") from e
        for key in ("version", "kind", "dims", "tolerances"):
            if key not in doc:
                raise MalformedInputError(f"report is missing the {key!r} field")
        return cls(
            version=doc["version"],
            kind=doc["kind"],
            dims=doc["dims"],
            tolerances=doc["tolerances"],
            measure=doc.get("measure"),
            detection=doc.get("detection"),
        )


def matrix_as_pairs(mat: np.ndarray) -> list:
    """Complex matrix to nested [re, im] lists for report embedding."""
    return [[[z.real, z.imag] for z in row] for row in np.asarray(mat)]
