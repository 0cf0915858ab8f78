"""Test the OBJ and CSV writers."""
import numpy as np
import pytest

from rt_surfaces.const import CSV_COLUMNS
from rt_surfaces.exceptions import EmptyMesh
from rt_surfaces.export import format_float, write_csv, write_obj
from rt_surfaces.models import GridSpec, MeshBuffer
from rt_surfaces.sampler import sample

from tests.common import pair


def _lines(path):
    return path.read_text(encoding="utf-8").splitlines()


def test_format_float():
    """Test floats keep every significant digit."""
    assert format_float(0.1) == "0.10000000000000001"
    assert float(format_float(1 / 3)) == 1 / 3
    assert format_float(-2.0) == "-2"


def test_obj_two_by_two(tmp_path, unit_sphere):
    """Test a 2 x 2 grid writes four vertices, four normals and two faces."""
    mesh, _ = sample(unit_sphere, GridSpec(0, 0.5, 0, 0.5, 2, 2))
    path = tmp_path / "quad.obj"
    write_obj(mesh, path)
    lines = _lines(path)
    assert [line.split()[0] for line in lines] == ["v"] * 4 + ["vn"] * 4 + ["f"] * 2
    assert lines[-2:] == ["f 1//1 3//3 4//4", "f 1//1 4//4 2//2"]
    assert b"\r\n" not in path.read_bytes()


def test_obj_masked_node(tmp_path):
    """Test masked nodes are left out and break their faces."""
    mesh, _ = sample(pair("0", "z^2"), GridSpec(-1, 0, -1, 0, 2, 2))
    path = tmp_path / "masked.obj"
    write_obj(mesh, path)
    lines = _lines(path)
    assert sum(line.startswith("v ") for line in lines) == 3
    assert sum(line.startswith("vn ") for line in lines) == 3
    assert not any(line.startswith("f ") for line in lines)


def test_obj_remaps_indices(tmp_path):
    """Test faces refer to the compacted 1-based vertex numbering."""
    grid = GridSpec(0, 1, 0, 1, 2, 3)
    valid = np.array([False, True, True, False, True, True])
    points = np.arange(18, dtype=float).reshape(6, 3)
    mesh = MeshBuffer(grid, points, points, valid, np.ones(6), faces=[(1, 4, 5)])
    path = tmp_path / "remap.obj"
    write_obj(mesh, path)
    lines = _lines(path)
    assert lines[0] == "v 3 4 5"
    assert lines[-1] == "f 1//1 3//3 4//4"


def test_obj_empty(tmp_path):
    """Test an all-masked mesh is refused."""
    grid = GridSpec(0, 1, 0, 1, 2, 2)
    nan = np.full((4, 3), np.nan)
    mesh = MeshBuffer(grid, nan, nan, np.zeros(4, dtype=bool), np.full(4, np.nan))
    with pytest.raises(EmptyMesh):
        write_obj(mesh, tmp_path / "empty.obj")
    assert not (tmp_path / "empty.obj").exists()


def test_csv(tmp_path, identity_pair):
    """Test one CSV line per valid node under the fixed header."""
    grid = GridSpec(-0.2, 0.2, -0.2, 0.2, 3, 4)
    _, rows = sample(identity_pair, grid)
    path = tmp_path / "report.csv"
    write_csv(rows, path)
    lines = _lines(path)
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 12
    first = [float(v) for v in lines[1].split(",")]
    assert first[:2] == [-0.2, -0.2]
    assert len(first) == len(CSV_COLUMNS)


def test_csv_header_only(tmp_path):
    """Test an empty report still carries its header."""
    path = tmp_path / "empty.csv"
    write_csv([], path)
    assert path.read_text(encoding="utf-8") == ",".join(CSV_COLUMNS) + "\n"


def test_deterministic(tmp_path, square_f_pair):
    """Test repeated writes of the same grid are byte-identical."""
    grid = GridSpec(-0.4, 0.4, -0.4, 0.4, 9, 9)
    outputs = []
    for run in range(2):
        obj, csv = tmp_path / f"{run}.obj", tmp_path / f"{run}.csv"
        mesh, rows = sample(square_f_pair, grid)
        write_obj(mesh, obj)
        write_csv(rows, csv)
        outputs.append((obj.read_bytes(), csv.read_bytes()))
    assert outputs[0] == outputs[1]
