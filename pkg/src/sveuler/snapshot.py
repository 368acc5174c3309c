"""Binary snapshot files for physical-space vorticity.

Layout (little-endian throughout):

    bytes 0..3    magic "SVF1"
    bytes 4..5    format version, u16 (currently 1)
    bytes 6..9    mode cutoff N, u32
    bytes 10..17  simulation time, f64
    bytes 18..    payload: N_G x N_G = (2N)^2 vorticity values, f64,
                  row-major (exactly 8 * N_G^2 bytes)

Only the vorticity is stored; the velocity is reconstructed on load via the
spectral inversion.  Writes go through a temporary file in the target
directory followed by an atomic rename.
"""

from __future__ import annotations

import os
import struct
import tempfile

import numpy as np

from .errors import SnapshotError
from .grid import GridSpec, PhysicalField, SpectralField, to_physical

__all__ = ["write_snapshot", "read_snapshot", "MAGIC", "VERSION"]

MAGIC = b"SVF1"
VERSION = 1
_HEADER = struct.Struct("<4sHId")


def write_snapshot(path, omega: SpectralField | PhysicalField, time: float) -> None:
    """Dump the field's collocation values with an atomic replace.

    Spectral fields are evaluated on the collocation grid first; physical
    fields are stored as-is (so read -> write reproduces a file bit-exactly).
    """
    grid = omega.grid
    values = omega.values if isinstance(omega, PhysicalField) else to_physical(omega).values
    payload = np.ascontiguousarray(values, dtype="<f8").tobytes()
    header = _HEADER.pack(MAGIC, VERSION, grid.n_modes, float(time))
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header)
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_snapshot(path) -> tuple[PhysicalField, float]:
    """Load a snapshot; returns the stored collocation values and the time.

    The payload is returned exactly as written (bit-exact round trip);
    convert with to_spectral when coefficients are needed.
    """
    path = os.fspath(path)
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SnapshotError(f"{path}: {exc}") from exc
    if len(raw) < _HEADER.size:
        raise SnapshotError(f"{path}: truncated header ({len(raw)} bytes)")
    magic, version, n_modes, time = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise SnapshotError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise SnapshotError(f"{path}: unsupported version {version}")
    try:
        grid = GridSpec(n_modes)
    except ValueError as exc:
        raise SnapshotError(f"{path}: {exc}") from exc
    expected = 8 * grid.n_grid**2
    body = raw[_HEADER.size :]
    if len(body) != expected:
        raise SnapshotError(
            f"{path}: payload is {len(body)} bytes, expected {expected}"
        )
    values = np.frombuffer(body, dtype="<f8").reshape(grid.n_grid, grid.n_grid)
    return PhysicalField(grid, values.astype(np.float64)), time
