"""OBJ and CSV writers for sampled surfaces."""
from __future__ import annotations

from collections.abc import Iterable
import csv
from pathlib import Path

import numpy as np

from .const import _LOGGER, CSV_COLUMNS, FLOAT_FORMAT
from .exceptions import EmptyMesh
from .models import MeshBuffer, ReportRow


def format_float(value: float) -> str:
    """Format a float with 17 significant digits."""
    return format(float(value), FLOAT_FORMAT)


def _triple(prefix: str, values: np.ndarray) -> str:
    return " ".join([prefix, *(format_float(v) for v in values)]) + "\n"


def write_obj(mesh: MeshBuffer, path: str | Path) -> None:
    """Write valid vertices, their normals and the faces as Wavefront OBJ."""
    if mesh.valid_count == 0:
        raise EmptyMesh("Nothing to write")
    valid = np.flatnonzero(mesh.valid_mask)
    # grid index -> 1-based OBJ index
    remap = {int(node): position + 1 for position, node in enumerate(valid)}
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        for node in valid:
            file.write(_triple("v", mesh.vertices[node]))
        for node in valid:
            file.write(_triple("vn", mesh.normals[node]))
        for face in mesh.faces:
            refs = " ".join(f"{remap[i]}//{remap[i]}" for i in face)
            file.write(f"f {refs}\n")
    _LOGGER.debug(
        "Wrote %s vertices and %s faces to %s", len(valid), len(mesh.faces), path
    )


def write_csv(rows: Iterable[ReportRow], path: str | Path) -> None:
    """Write one CSV line per valid node."""
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([format_float(v) for v in row.values()])
