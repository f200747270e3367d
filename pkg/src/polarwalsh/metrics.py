"""MSE, PSNR and SSIM for grayscale images."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# psnr() returns this when the images are identical.
IDENTICAL = math.inf

_WIN = 11
_SIGMA = 1.5


def _pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image shapes differ: {a.shape} vs {b.shape}")
    return a, b


def mse(a, b, mask=None) -> float:
    a, b = _pair(a, b)
    d = (a - b) ** 2
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != a.shape:
            raise ValueError(f"mask shape {mask.shape} does not match image shape {a.shape}")
        d = d[mask]
    return float(d.mean())


def psnr_from_mse(err: float, peak: float = 255.0) -> float:
    if peak <= 0:
        raise ValueError(f"peak must be positive, got {peak}")
    if err == 0:
        return IDENTICAL
    return 10.0 * math.log10(peak * peak / err)


def psnr(a, b, peak: float = 255.0, mask=None) -> float:
    return psnr_from_mse(mse(a, b, mask), peak)


def _gaussian_window() -> np.ndarray:
    t = np.arange(_WIN) - _WIN // 2
    g = np.exp(-(t * t) / (2 * _SIGMA**2))
    return g / g.sum()


def _filter_valid(img: np.ndarray, w: np.ndarray) -> np.ndarray:
    # separable correlation, keeping only fully covered positions
    rows = sliding_window_view(img, w.size, axis=0) @ w
    return sliding_window_view(rows, w.size, axis=1) @ w


def ssim_map(a, b, data_range: float = 255.0) -> np.ndarray:
    a, b = _pair(a, b)
    if a.ndim != 2 or min(a.shape) < _WIN:
        raise ValueError(f"SSIM needs 2D images of at least {_WIN}x{_WIN}, got {a.shape}")
    c1 = (0.01 * data_range) ** 2
    c2 = (0.03 * data_range) ** 2
    w = _gaussian_window()
    mu_a = _filter_valid(a, w)
    mu_b = _filter_valid(b, w)
    var_a = _filter_valid(a * a, w) - mu_a * mu_a
    var_b = _filter_valid(b * b, w) - mu_b * mu_b
    cov = _filter_valid(a * b, w) - mu_a * mu_b
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a**2 + mu_b**2 + c1) * (var_a + var_b + c2)
    return num / den


def ssim(a, b, data_range: float = 255.0) -> float:
    """Mean SSIM with an 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03."""
    return float(ssim_map(a, b, data_range).mean())


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr: float
    ssim: float
    peak: float

    def as_record(self) -> str:
        psnr_text = "identical" if self.psnr == IDENTICAL else f"{self.psnr:.6f}"
        return (
            f"mse={self.mse:.6f}\n"
            f"psnr={psnr_text}\n"
            f"ssim={self.ssim:.6f}\n"
            f"peak={self.peak:g}\n"
        )


def quality_report(a, b, peak: float = 255.0, mask=None) -> QualityReport:
    err = mse(a, b, mask)
    return QualityReport(mse=err, psnr=psnr_from_mse(err, peak), ssim=ssim(a, b), peak=peak)
