"""Binary exchange format for distance matrices.

Layout: a 16-byte header (magic "X4EXT1", two zero pad bytes, then the side
length N as an unsigned 64-bit little-endian integer) followed by N*N
float64 entries in row-major order.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np


MAGIC = b"X4EXT1"
HEADER = struct.Struct("<6s2sQ")


def write_distance_matrix(path, dist: np.ndarray) -> None:
    mat = np.ascontiguousarray(dist, dtype="<f8")
    n = len(mat)
    if mat.shape != (n, n):
        raise ValueError("distance matrix must be square")
    with open(path, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, b"\x00\x00", n))
        fh.write(mat.tobytes())


def read_distance_matrix(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if len(raw) < HEADER.size:
        raise ValueError("file too short for a distance-matrix header")
    magic, _pad, n = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError("bad magic; not a distance-matrix file")
    body = raw[HEADER.size :]
    if len(body) != 8 * n * n:
        raise ValueError("file length does not match the declared size")
    return np.frombuffer(body, dtype="<f8").reshape(n, n).copy()
