"""PGM (P2/P5, maxval 255) and PWP1 polar-matrix files.

PWP1 layout::

    PWP1\\n
    <n1> <n2> <f as 1/2 or 1/1> <r_max as repr(float)>\\n
    n1*n2 float64 little-endian values, row-major
"""

from __future__ import annotations

import os
import re
import sys

import numpy as np

from .convert import PolarImage
from .geometry import MeasureKind, PolarGrid

PWP_MAGIC = b"PWP1"
_MEASURE_TEXT = {MeasureKind.UNIFORM_AREA: "1/2", MeasureKind.UNIFORM_RADIAL: "1/1"}


class FormatError(ValueError):
    pass


def quantize(img) -> np.ndarray:
    """Round half up, then clamp to [0, 255]; returns uint8."""
    a = np.asarray(img, dtype=np.float64)
    if not np.all(np.isfinite(a)):
        raise ValueError("image contains NaN or Inf")
    return np.clip(np.floor(a + 0.5), 0, 255).astype(np.uint8)


def encode_pgm(img, mode: str = "P5") -> bytes:
    q = quantize(img)
    if q.ndim != 2:
        raise ValueError(f"expected a 2D image, got shape {q.shape}")
    rows, cols = q.shape
    header = f"{mode}\n{cols} {rows}\n255\n".encode("ascii")
    if mode == "P5":
        return header + q.tobytes()
    if mode == "P2":
        lines = [" ".join(str(int(v)) for v in row) for row in q]
        return header + ("\n".join(lines) + "\n").encode("ascii")
    raise ValueError(f"unsupported PGM mode {mode!r}")


def write_pgm(img, path, mode: str = "P5") -> None:
    data = encode_pgm(img, mode)
    with open(path, "wb") as fh:
        fh.write(data)


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def decode_pgm(data: bytes) -> np.ndarray:
    pos = 0
    fields = []
    for _ in range(4):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise FormatError("truncated PGM header")
        fields.append(m.group(1))
        pos = m.end()
    magic, w, h, maxval = fields
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"not a P2/P5 graymap (magic {magic!r})")
    try:
        cols, rows, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise FormatError("malformed PGM header") from None
    if cols < 1 or rows < 1:
        raise FormatError(f"bad PGM dimensions {cols}x{rows}")
    if maxval != 255:
        raise FormatError(f"only maxval 255 is supported, got {maxval}")
    n = rows * cols
    if magic == b"P5":
        # exactly one whitespace byte separates header and raster
        payload = data[pos + 1 : pos + 1 + n]
        if len(payload) != n:
            raise FormatError(f"truncated PGM payload: expected {n} bytes, got {len(payload)}")
        values = np.frombuffer(payload, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < n:
            raise FormatError(f"truncated PGM payload: expected {n} samples, got {len(body)}")
        try:
            values = np.array([int(t) for t in body[:n]])
        except ValueError:
            raise FormatError("non-integer sample in P2 payload") from None
        if values.min() < 0 or values.max() > 255:
            raise FormatError("P2 sample outside [0, 255]")
    return values.reshape(rows, cols).astype(np.float64)


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return decode_pgm(fh.read())


def encode_polar(pimg: PolarImage) -> bytes:
    g = pimg.grid
    header = f"{g.n1} {g.n2} {_MEASURE_TEXT[g.measure]} {float(g.r_max)!r}\n".encode("ascii")
    payload = np.ascontiguousarray(pimg.values, dtype="<f8").tobytes()
    return PWP_MAGIC + b"\n" + header + payload


def write_polar(pimg: PolarImage, path) -> None:
    data = encode_polar(pimg)
    with open(path, "wb") as fh:
        fh.write(data)


def decode_polar(data: bytes) -> PolarImage:
    if not data.startswith(PWP_MAGIC + b"\n"):
        raise FormatError("bad magic: not a PWP1 file")
    start = len(PWP_MAGIC) + 1
    end = data.find(b"\n", start)
    if end < 0:
        raise FormatError("missing PWP1 header line")
    parts = data[start:end].decode("ascii", "replace").split()
    if len(parts) != 4:
        raise FormatError(f"PWP1 header needs 4 fields, got {len(parts)}")
    try:
        n1, n2 = int(parts[0]), int(parts[1])
        measure = MeasureKind.parse(parts[2])
        r_max = float(parts[3])
        grid = PolarGrid(n1, n2, r_max, measure)
    except ValueError as exc:
        raise FormatError(f"bad PWP1 header: {exc}") from None
    payload = data[end + 1 :]
    expected = 8 * n1 * n2
    if len(payload) != expected:
        raise FormatError(f"payload length mismatch: expected {expected} bytes, got {len(payload)}")
    values = np.frombuffer(payload, dtype="<f8").reshape(n1, n2).astype(np.float64)
    return PolarImage(grid, values)


def read_polar(path) -> PolarImage:
    with open(path, "rb") as fh:
        return decode_polar(fh.read())


def read_vector(path_or_text: str | os.PathLike | None) -> np.ndarray:
    """Whitespace-separated decimals from a file, or from stdin when ``path`` is None or '-'."""
    if path_or_text is None or str(path_or_text) == "-":
        text = sys.stdin.read()
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    try:
        return np.array([float(t) for t in text.split()], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"bad vector data: {exc}") from None
