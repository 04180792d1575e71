import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lqgheat import GridFormatError, read_grid, write_grid
from lqgheat.gridio import MAGIC


def test_round_trip_preserves_bytes(tmp_path):
    grid = np.arange(16.0).reshape(4, 4) / 7.0
    path = tmp_path / "g.grid"
    write_grid(path, grid)
    back = read_grid(path)
    assert back.dtype == np.float64
    np.testing.assert_array_equal(back, grid)


def test_file_layout_is_magic_size_payload(tmp_path):
    grid = np.zeros((2, 2))
    grid[0, 1] = 1.5
    path = tmp_path / "g.grid"
    write_grid(path, grid)
    raw = path.read_bytes()
    assert raw[:8] == MAGIC
    assert struct.unpack("<I", raw[8:12])[0] == 2
    assert len(raw) == 8 + 4 + 4 * 8
    # row-major: entry (0,1) is the second value
    assert struct.unpack("<d", raw[12 + 8 : 12 + 16])[0] == 1.5


def test_rejects_wrong_magic(tmp_path):
    path = tmp_path / "bad.grid"
    path.write_bytes(b"NOTAGRID" + struct.pack("<I", 2) + b"\x00" * 32)
    with pytest.raises(GridFormatError):
        read_grid(path)


def test_rejects_truncated_payload(tmp_path):
    path = tmp_path / "trunc.grid"
    path.write_bytes(MAGIC + struct.pack("<I", 4) + b"\x00" * 10)
    with pytest.raises(GridFormatError):
        read_grid(path)


def test_rejects_trailing_garbage(tmp_path):
    path = tmp_path / "long.grid"
    path.write_bytes(MAGIC + struct.pack("<I", 2) + b"\x00" * 32 + b"x")
    with pytest.raises(GridFormatError):
        read_grid(path)


def test_rejects_non_finite_payload(tmp_path):
    grid = np.zeros((2, 2))
    grid[1, 1] = np.nan
    path = tmp_path / "nan.grid"
    payload = MAGIC + struct.pack("<I", 2) + grid.astype("<f8").tobytes()
    path.write_bytes(payload)
    with pytest.raises(GridFormatError):
        read_grid(path)


def test_write_rejects_non_square():
    with pytest.raises(GridFormatError):
        write_grid("/tmp/never-written.grid", np.zeros((2, 3)))


def test_write_rejects_too_small():
    with pytest.raises(GridFormatError):
        write_grid("/tmp/never-written.grid", np.zeros((1, 1)))


@settings(max_examples=25, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=9),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_round_trip_arbitrary_grids(tmp_path_factory, n, seed):
    rng = np.random.Generator(np.random.Philox(seed))
    grid = rng.normal(size=(n, n)) * 10.0 ** rng.integers(-8, 9)
    path = tmp_path_factory.mktemp("grids") / "g.grid"
    write_grid(path, grid)
    np.testing.assert_array_equal(read_grid(path), grid)
