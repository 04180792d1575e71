"""Reading and writing grids in the LQGGRID1 binary format.

Layout: 8-byte ASCII magic ``LQGGRID1``, unsigned 32-bit little-endian side
length n, then n*n little-endian IEEE-754 float64 values in row-major order.
The format carries every persisted field, weight grid, and heat snapshot.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import GridFormatError

MAGIC = b"LQGGRID1"


def write_grid(path: str | Path, values: np.ndarray) -> None:
    """Write an n-by-n float array to ``path`` in LQGGRID1 format."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise GridFormatError(f"grid must be square 2-d, got shape {values.shape}")
    n = values.shape[0]
    if n < 2:
        raise GridFormatError(f"grid side must be >= 2, got {n}")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", n))
        fh.write(values.astype("<f8", copy=False).tobytes(order="C"))


def read_grid(path: str | Path) -> np.ndarray:
    """Read an LQGGRID1 file, returning an (n, n) float64 array.

    Raises GridFormatError on bad magic, truncated or oversized payload,
    or non-finite values.
    """
    raw = Path(path).read_bytes()
    if len(raw) < 12 or raw[:8] != MAGIC:
        raise GridFormatError(f"{path}: not an LQGGRID1 file (bad magic)")
    (n,) = struct.unpack("<I", raw[8:12])
    if n < 2:
        raise GridFormatError(f"{path}: invalid side length {n}")
    expected = 12 + 8 * n * n
    if len(raw) != expected:
        raise GridFormatError(
            f"{path}: payload size mismatch (expected {expected} bytes, got {len(raw)})"
        )
    values = np.frombuffer(raw[12:], dtype="<f8").astype(np.float64).reshape(n, n)
    if not np.all(np.isfinite(values)):
        raise GridFormatError(f"{path}: grid contains non-finite values")
    return values
