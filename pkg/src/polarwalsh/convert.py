"""Cartesian <-> polar image conversion by sector averaging."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import MeasureKind, PolarGrid, SectorIndex, is_power_of_two, pixel_sectors, sector_centroid

WHITE = 255.0


@dataclass(frozen=True)
class PolarImage:
    grid: PolarGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            raise ValueError(f"values have shape {values.shape}, grid expects {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("polar values contain NaN or Inf")
        object.__setattr__(self, "values", values)


def raster_r_max(rows: int, cols: int) -> int:
    return min(rows, cols) // 2


def recenter(i: int, j: int, rows: int, cols: int) -> tuple[int, int]:
    return i - rows // 2, j - cols // 2


def disk_mask(rows: int, cols: int) -> np.ndarray:
    """Pixels strictly inside the disk used by the polar conversions."""
    r_max = raster_r_max(rows, cols)
    y = (np.arange(rows) - rows // 2)[:, None]
    x = (np.arange(cols) - cols // 2)[None, :]
    return x * x + y * y < r_max * r_max


def _check_image(img) -> np.ndarray:
    a = np.asarray(img, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2D grayscale image, got shape {a.shape}")
    if a.shape[0] < 2 or a.shape[1] < 2:
        raise ValueError(f"image must be at least 2x2, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("image contains NaN or Inf")
    return a


def _flat_sectors(grid: PolarGrid, rows: int, cols: int):
    k, q = pixel_sectors(grid, rows, cols)
    inside = k < grid.n1
    flat = np.where(inside, k * grid.n2 + q, -1)
    return flat, inside


def sector_statistics(img, grid: PolarGrid):
    """Per-sector pixel means and counts of ``img`` on ``grid``.

    Means of empty sectors are NaN. Each mean is computed relative to one
    member pixel, so a sector whose pixels are all equal gets that value back
    bit for bit.
    """
    a = _check_image(img)
    flat, inside = _flat_sectors(grid, *a.shape)
    idx = flat[inside]
    vals = a[inside]
    size = grid.n1 * grid.n2
    counts = np.bincount(idx, minlength=size)
    ref = np.zeros(size)
    ref[idx] = vals
    resid = np.bincount(idx, weights=vals - ref[idx], minlength=size)
    with np.errstate(invalid="ignore", divide="ignore"):
        means = ref + resid / counts
    means[counts == 0] = np.nan
    return means.reshape(grid.shape), counts.reshape(grid.shape)


def _neighbour_mean(a: np.ndarray, grid: PolarGrid, k: int, q: int) -> float:
    rows, cols = a.shape
    r, theta = sector_centroid(grid, SectorIndex(k, q))
    row = r * math.sin(theta) + rows // 2
    col = r * math.cos(theta) + cols // 2
    r0, c0 = math.floor(row), math.floor(col)
    picks = [a[i, j] for i in (r0, r0 + 1) for j in (c0, c0 + 1) if 0 <= i < rows and 0 <= j < cols]
    if not picks:
        raise ValueError(f"sector ({k}, {q}) has no pixels near its centroid")
    return float(np.mean(picks))


def cartesian_to_polar(img, n1: int, n2: int, measure: MeasureKind = MeasureKind.UNIFORM_AREA) -> PolarImage:
    """Polar representation of a grayscale image.

    Every non-empty sector gets the mean of its pixels. An empty sector gets
    the mean of the (up to four) lattice pixels around its centroid. Pixels
    at or beyond ``r_max = min(rows, cols) // 2`` are ignored.
    """
    if not is_power_of_two(n1) or not is_power_of_two(n2):
        raise ValueError(f"polar size must be powers of two, got {n1}x{n2}")
    a = _check_image(img)
    grid = PolarGrid(n1, n2, float(raster_r_max(*a.shape)), measure)
    means, counts = sector_statistics(a, grid)
    for k, q in zip(*np.nonzero(counts == 0)):
        means[k, q] = _neighbour_mean(a, grid, int(k), int(q))
    return PolarImage(grid, means)


def polar_to_cartesian(pimg: PolarImage, rows: int, cols: int, background: float = WHITE) -> np.ndarray:
    """Paint each in-disk pixel with the value of its sector.

    Pixels outside the disk keep ``background`` (white by default).
    """
    if rows < 2 or cols < 2:
        raise ValueError(f"image must be at least 2x2, got {rows}x{cols}")
    r_max = raster_r_max(rows, cols)
    if pimg.grid.r_max != r_max:
        raise ValueError(f"polar image has r_max={pimg.grid.r_max}, a {rows}x{cols} raster implies {r_max}")
    flat, inside = _flat_sectors(pimg.grid, rows, cols)
    out = np.full((rows, cols), float(background))
    out[inside] = pimg.values.reshape(-1)[flat[inside]]
    return out


def empty_sector_fraction(rows: int, cols: int, grid: PolarGrid) -> float:
    """Fraction of sectors that contain no pixel of a ``rows x cols`` raster."""
    flat, inside = _flat_sectors(grid, rows, cols)
    counts = np.bincount(flat[inside], minlength=grid.n1 * grid.n2)
    return float(np.mean(counts == 0))
