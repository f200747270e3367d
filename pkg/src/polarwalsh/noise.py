"""Synthetic banding noise, the Airy diffraction pattern and Bessel J1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .convert import PolarImage, polar_to_cartesian, raster_r_max
from .geometry import MeasureKind, PolarGrid, pixel_polar

# Power series below this, Hankel asymptotic expansion above.
_SERIES_LIMIT = 12.0
_MAX_ARG = 1e4


@dataclass(frozen=True)
class CircularBands:
    period: int
    amplitude: float
    measure: MeasureKind = MeasureKind.UNIFORM_AREA


@dataclass(frozen=True)
class AzimuthalBands:
    period: int
    amplitude: float


@dataclass(frozen=True)
class AiryPattern:
    i0: float = 255.0
    ka: float = 2 * math.pi


NoiseSpec = Union[CircularBands, AzimuthalBands, AiryPattern]


def _band_profile(length: int, period: int, amplitude: float) -> np.ndarray:
    if period < 2 or period % 2:
        raise ValueError(f"band period must be an even integer >= 2, got {period}")
    if length % period:
        raise ValueError(f"band period {period} does not divide dimension {length}")
    if amplitude < 0:
        raise ValueError(f"band amplitude must be non-negative, got {amplitude}")
    idx = np.arange(length)
    return np.where((idx // (period // 2)) % 2 == 0, float(amplitude), 0.0)


def gen_banding_polar(grid: PolarGrid, spec: NoiseSpec) -> PolarImage:
    """Polar band matrix: blocks of ``period/2`` alternating between z and 0.

    Circular bands vary with the ring index, azimuthal bands with the sector
    index. The z-block starts at index 0. Circular bands are laid out on
    ``spec.measure`` regardless of the measure of ``grid``.
    """
    if isinstance(spec, CircularBands):
        g = PolarGrid(grid.n1, grid.n2, grid.r_max, spec.measure)
        col = _band_profile(grid.n1, spec.period, spec.amplitude)
        return PolarImage(g, np.repeat(col[:, None], grid.n2, axis=1))
    if isinstance(spec, AzimuthalBands):
        row = _band_profile(grid.n2, spec.period, spec.amplitude)
        return PolarImage(grid, np.repeat(row[None, :], grid.n1, axis=0))
    raise TypeError(f"banding noise needs CircularBands or AzimuthalBands, got {type(spec).__name__}")


def _j1_series(x: np.ndarray) -> np.ndarray:
    half = x / 2.0
    term = half.copy()
    total = term.copy()
    h2 = half * half
    for m in range(60):
        term = term * (-h2) / ((m + 1) * (m + 2))
        total += term
    return total


def _j1_asymptotic(x: np.ndarray) -> np.ndarray:
    # Hankel expansion for order 1, truncated at its smallest term.
    mu = 4.0
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 60):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = np.abs(term)
        active &= mag < prev
        prev = np.where(active, mag, prev)
        contrib = np.where(active, term, 0.0)
        if k % 2:
            sign = -1.0 if (k // 2) % 2 else 1.0
            q += sign * contrib
        else:
            sign = -1.0 if (k // 2) % 2 else 1.0
            p += sign * contrib
        if not active.any():
            break
    chi = x - 0.75 * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j1(x):
    """Bessel function of the first kind, order one.

    Accepts scalars or arrays; |x| must stay below 1e4.
    """
    arr = np.asarray(x, dtype=np.float64)
    ax = np.abs(arr)
    if np.any(~np.isfinite(ax)) or np.any(ax >= _MAX_ARG):
        raise ValueError(f"bessel_j1 supports |x| < {_MAX_ARG:g}")
    out = np.empty_like(ax)
    small = ax <= _SERIES_LIMIT
    out[small] = _j1_series(ax[small])
    out[~small] = _j1_asymptotic(ax[~small])
    out = np.sign(arr) * out
    return float(out) if out.ndim == 0 else out


def airy_intensity(x, i0: float = 1.0):
    """``i0 * (2 J1(x) / x)**2``, with the value at x = 0 taken as ``i0``."""
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0):
        raise ValueError("airy_intensity expects x >= 0")
    safe = np.where(arr == 0, 1.0, arr)
    ratio = np.where(arr == 0, 1.0, 2.0 * bessel_j1(safe) / safe)
    out = i0 * ratio * ratio
    return float(out) if out.ndim == 0 else out


def render_airy(size: int, ka: float = 2 * math.pi, i0: float = 255.0, enhance: float = 1.0) -> np.ndarray:
    """Grayscale Airy pattern on a ``size x size`` raster.

    The pixel radius, normalized by the disk radius ``size // 2``, stands in
    for sin(theta). Values are ``255 * (I / i0) ** (1 / enhance)`` inside the
    disk and 0 outside; ``enhance > 1`` brightens the outer rings.
    """
    if size < 2:
        raise ValueError(f"size must be at least 2, got {size}")
    if enhance < 1:
        raise ValueError(f"enhance must be >= 1, got {enhance}")
    if ka <= 0:
        raise ValueError(f"ka must be positive, got {ka}")
    r, _ = pixel_polar(size, size)
    radius = size // 2
    inside = r < radius
    out = np.zeros((size, size))
    if i0 == 0:
        return out
    rel = airy_intensity(ka * r[inside] / radius, 1.0)
    out[inside] = 255.0 * np.power(rel, 1.0 / enhance)
    return out


def render_noise(spec: NoiseSpec, rows: int, cols: int, n1: int = 256, n2: int = 512,
                 enhance: float = 1.0) -> np.ndarray:
    """Cartesian noise image for any spec; zero outside the disk.

    Band noise is laid out on an ``n1 x n2`` polar grid sized to the raster.
    The Airy pattern needs a square raster.
    """
    if isinstance(spec, AiryPattern):
        if rows != cols:
            raise ValueError("Airy noise needs a square raster")
        return render_airy(rows, spec.ka, spec.i0, enhance)
    grid = PolarGrid(n1, n2, float(raster_r_max(rows, cols)))
    return polar_to_cartesian(gen_banding_polar(grid, spec), rows, cols, background=0.0)


def add_noise(img, noise, clamp: bool = True) -> np.ndarray:
    a = np.asarray(img, dtype=np.float64)
    b = np.asarray(noise, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image shape {a.shape} does not match noise shape {b.shape}")
    out = a + b
    if clamp:
        np.clip(out, 0.0, 255.0, out=out)
    return out
