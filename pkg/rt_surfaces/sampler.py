"""Grid sampling of RT-surfaces into masked meshes and report rows."""
from __future__ import annotations

import numpy as np

from .const import _LOGGER
from .exceptions import DegenerateGaussMap, EmptyMesh, EvalError, SingularPoint
from .models import (
    GeneratorPair,
    GridSpec,
    MeshBuffer,
    ReportRow,
    RotationParams,
    SurfaceJet,
    Thresholds,
)
from .rotation import rotation_generators
from .weierstrass import evaluate

MASKED_ERRORS = (DegenerateGaussMap, SingularPoint, EvalError)


def as_generators(source: GeneratorPair | RotationParams) -> GeneratorPair:
    """Return Weierstrass data for a generator pair or a rotation surface."""
    if isinstance(source, RotationParams):
        return rotation_generators(source)
    return source


def evaluate_grid(
    gen: GeneratorPair, grid: GridSpec, thresholds: Thresholds = Thresholds()
) -> list[SurfaceJet | None]:
    """Evaluate every node in flat order; masked nodes are None."""
    jets: list[SurfaceJet | None] = []
    for u1 in grid.u1:
        for u2 in grid.u2:
            try:
                jets.append(evaluate(gen, complex(u1, u2), thresholds))
            except MASKED_ERRORS as err:
                _LOGGER.debug("Masked node (%s, %s): %s", u1, u2, err)
                jets.append(None)
    return jets


def _faces(
    grid: GridSpec, valid: np.ndarray, det_v: np.ndarray
) -> list[tuple[int, int, int]]:
    faces = []
    for i in range(grid.n1 - 1):
        for j in range(grid.n2 - 1):
            a = grid.index(i, j)
            b = grid.index(i + 1, j)
            c = grid.index(i + 1, j + 1)
            d = grid.index(i, j + 1)
            corners = [a, b, c, d]
            if not valid[corners].all():
                continue
            signs = np.sign(det_v[corners])
            # a fold crosses the cell
            if not (signs == signs[0]).all():
                continue
            faces.append((a, b, c))
            faces.append((a, c, d))
    return faces


def sample(
    source: GeneratorPair | RotationParams,
    grid: GridSpec,
    thresholds: Thresholds = Thresholds(),
) -> tuple[MeshBuffer, list[ReportRow]]:
    """Sample a surface over a grid, masking degenerate and singular nodes."""
    gen = as_generators(source)
    jets = evaluate_grid(gen, grid, thresholds)
    count = grid.n1 * grid.n2
    vertices = np.full((count, 3), np.nan)
    normals = np.full((count, 3), np.nan)
    det_v = np.full(count, np.nan)
    valid = np.zeros(count, dtype=bool)
    rows = []
    for index, jet in enumerate(jets):
        if jet is None:
            continue
        vertices[index] = jet.X
        normals[index] = jet.N
        det_v[index] = jet.detV
        valid[index] = True
        rows.append(ReportRow.from_jet(jet))
    if not valid.any():
        raise EmptyMesh(f"No valid node for {gen} on {grid}")
    mesh = MeshBuffer(
        grid=grid,
        vertices=vertices,
        normals=normals,
        valid_mask=valid,
        det_v=det_v,
        faces=_faces(grid, valid, det_v),
    )
    _LOGGER.debug(
        "Sampled %s: %s of %s nodes valid, %s faces",
        gen,
        mesh.valid_count,
        count,
        len(mesh.faces),
    )
    return mesh, rows
