"""Polar grids on a disk and the polar Walsh basis functions defined on them.

A grid splits the open disk of radius ``r_max`` into ``n1`` rings and ``n2``
angular sectors. Ring boundaries follow ``((1 + k) / n1) ** f * r_max``, with
``f = 1/2`` giving rings of equal area and ``f = 1`` rings of equal width.
Sectors are half-open in both coordinates.

Angles live in [0, 2*pi) and are measured as ``atan2(row_offset, col_offset)``
from the image center; every raster routine in the package shares this.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .transform import TransformOrder

TWO_PI = 2.0 * math.pi


class MeasureKind(enum.Enum):
    UNIFORM_AREA = "area"
    UNIFORM_RADIAL = "radial"

    @property
    def exponent(self) -> float:
        return 0.5 if self is MeasureKind.UNIFORM_AREA else 1.0

    @classmethod
    def parse(cls, text: str) -> "MeasureKind":
        key = text.strip().lower()
        aliases = {"area": cls.UNIFORM_AREA, "0.5": cls.UNIFORM_AREA, "1/2": cls.UNIFORM_AREA,
                   "radial": cls.UNIFORM_RADIAL, "1": cls.UNIFORM_RADIAL, "1.0": cls.UNIFORM_RADIAL,
                   "1/1": cls.UNIFORM_RADIAL}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown measure {text!r}") from None


def is_power_of_two(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


@dataclass(frozen=True)
class PolarGrid:
    n1: int
    n2: int
    r_max: float
    measure: MeasureKind = MeasureKind.UNIFORM_AREA

    def __post_init__(self):
        if not is_power_of_two(self.n1):
            raise ValueError(f"ring count must be a power of two >= 2, got {self.n1}")
        if not is_power_of_two(self.n2):
            raise ValueError(f"sector count must be a power of two >= 2, got {self.n2}")
        if not self.r_max > 0:
            raise ValueError(f"r_max must be positive, got {self.r_max}")

    @property
    def f(self) -> float:
        return self.measure.exponent

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    def radii(self) -> np.ndarray:
        k = np.arange(self.n1)
        return ((1 + k) / self.n1) ** self.f * self.r_max

    def angles(self) -> np.ndarray:
        return TWO_PI * (1 + np.arange(self.n2)) / self.n2


class SectorIndex(NamedTuple):
    k: int
    q: int


def ring_radius(grid: PolarGrid, k: int) -> float:
    if not 0 <= k < grid.n1:
        raise IndexError(f"ring index {k} out of range [0, {grid.n1})")
    return ((1 + k) / grid.n1) ** grid.f * grid.r_max


def sector_angle(grid: PolarGrid, q: int) -> float:
    if not 0 <= q < grid.n2:
        raise IndexError(f"sector index {q} out of range [0, {grid.n2})")
    return TWO_PI * (1 + q) / grid.n2


def sector_indices(grid: PolarGrid, r, theta):
    """Vectorized sector lookup.

    Returns integer arrays ``(k, q)``. Points on or beyond ``r_max`` get
    ``k >= grid.n1``; callers mask them out.
    """
    r = np.asarray(r, dtype=np.float64)
    theta = np.asarray(theta, dtype=np.float64)
    k = np.floor((r / grid.r_max) ** (1.0 / grid.f) * grid.n1).astype(np.int64)
    q = np.floor(theta / TWO_PI * grid.n2).astype(np.int64)
    # theta just below 2*pi can round up to n2
    q = np.minimum(q, grid.n2 - 1)
    return k, q


def locate_sector(grid: PolarGrid, r: float, theta: float) -> SectorIndex | None:
    """Sector containing the point, or ``None`` when it lies outside the open disk."""
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    if not 0 <= theta < TWO_PI:
        raise ValueError(f"angle must lie in [0, 2*pi), got {theta}")
    k, q = sector_indices(grid, r, theta)
    if k >= grid.n1:
        return None
    return SectorIndex(int(k), int(q))


def sector_centroid(grid: PolarGrid, s: SectorIndex) -> tuple[float, float]:
    """Mid-ring radius and mid-sector angle of a sector (unfloored)."""
    k, q = s
    f = grid.f
    r = grid.r_max / 2.0 * ((k / grid.n1) ** f + ((1 + k) / grid.n1) ** f)
    theta = math.pi * (1 + 2 * q) / grid.n2
    return r, theta


def pixel_polar(rows: int, cols: int):
    """Polar coordinates of every pixel of a ``rows x cols`` raster.

    Pixels are lattice points shifted by ``(rows // 2, cols // 2)``.
    Returns ``(r, theta)`` arrays of shape ``(rows, cols)``.
    """
    y = (np.arange(rows) - rows // 2)[:, None].astype(np.float64)
    x = (np.arange(cols) - cols // 2)[None, :].astype(np.float64)
    r = np.hypot(x, y)
    theta = np.arctan2(y, x)
    theta = np.where(theta < 0, theta + TWO_PI, theta)
    return np.broadcast_to(r, (rows, cols)), np.broadcast_to(theta, (rows, cols))


def pixel_sectors(grid: PolarGrid, rows: int, cols: int):
    """Sector indices ``(k, q)`` of every pixel of a ``rows x cols`` raster.

    Same lookup as :func:`sector_indices`, but for ``f = 1/2`` the ring index
    is taken from the integer squared radius so lattice points that sit
    exactly on a ring boundary land in the outer ring.
    """
    y = (np.arange(rows) - rows // 2)[:, None]
    x = (np.arange(cols) - cols // 2)[None, :]
    r2 = (x * x + y * y).astype(np.int64)
    _, theta = pixel_polar(rows, cols)
    if grid.f == 0.5 and float(grid.r_max).is_integer():
        k = (r2 * grid.n1) // int(grid.r_max) ** 2
        _, q = sector_indices(grid, 0.0, theta)
    else:
        k, q = sector_indices(grid, np.sqrt(r2), theta)
    return np.broadcast_to(k, (rows, cols)), q


def _seq_exponent(idx: int, pos, nbits: int):
    # sum_i idx_{nbits-1-i} * (pos_i xor pos_{i+1}), with pos_{nbits} = 0
    pos = np.asarray(pos, dtype=np.int64)
    total = np.zeros_like(pos)
    for i in range(nbits):
        bj = (idx >> (nbits - 1 - i)) & 1
        if bj:
            total = total + (((pos >> i) & 1) ^ ((pos >> (i + 1)) & 1))
    return total


def basis_sign(grid: PolarGrid, j: int, p: int, k, q, order: TransformOrder = TransformOrder.NATURAL):
    """Value (+1/-1) of basis function (j, p) on sector(s) (k, q)."""
    if not 0 <= j < grid.n1 or not 0 <= p < grid.n2:
        raise IndexError(f"basis index ({j}, {p}) out of range for grid {grid.shape}")
    k = np.asarray(k, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    if order is TransformOrder.NATURAL:
        e = _popcount(j & k) + _popcount(p & q)
    else:
        n1 = grid.n1.bit_length() - 1
        n2 = grid.n2.bit_length() - 1
        e = _seq_exponent(j, k, n1) + _seq_exponent(p, q, n2)
    return np.where(e % 2 == 0, 1, -1)


def _popcount(a):
    a = np.asarray(a, dtype=np.int64)
    count = np.zeros_like(a)
    while np.any(a):
        count += a & 1
        a = a >> 1
    return count


def basis_value(grid: PolarGrid, j: int, p: int, r: float, theta: float,
                order: TransformOrder = TransformOrder.NATURAL) -> int:
    s = locate_sector(grid, r, theta)
    if s is None:
        raise ValueError(f"point (r={r}, theta={theta}) lies outside the disk")
    return int(basis_sign(grid, j, p, s.k, s.q, order))


def sampled_basis(grid: PolarGrid, j: int, p: int, order: TransformOrder = TransformOrder.NATURAL) -> np.ndarray:
    """Basis function sampled once per sector, as an ``n1 x n2`` matrix of +/-1."""
    k, q = np.meshgrid(np.arange(grid.n1), np.arange(grid.n2), indexing="ij")
    return basis_sign(grid, j, p, k, q, order)


def render_basis(grid: PolarGrid, j: int, p: int, order: TransformOrder = TransformOrder.NATURAL,
                 size: int = 256) -> np.ndarray:
    """Draw basis function (j, p) on a ``size x size`` raster.

    +1 is drawn as 255 and -1 as 0; pixels outside the disk stay 255. The
    grid's ``r_max`` is replaced by ``size // 2`` so the disk fills the frame.
    """
    if size < 2:
        raise ValueError(f"size must be at least 2, got {size}")
    g = PolarGrid(grid.n1, grid.n2, float(size // 2), grid.measure)
    k, q = pixel_sectors(g, size, size)
    inside = k < g.n1
    signs = basis_sign(g, j, p, np.where(inside, k, 0), q, order)
    img = np.full((size, size), 255.0)
    img[inside & (signs < 0)] = 0.0
    return img
