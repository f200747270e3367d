"""Polar Walsh-Hadamard image processing with a simulated hybrid classical-quantum transform."""

from .convert import PolarImage, cartesian_to_polar, disk_mask, polar_to_cartesian, recenter
from .filter import FilterRequest, remove_banding, spectrum_report, suppress_spectrum
from .geometry import MeasureKind, PolarGrid, SectorIndex, locate_sector, render_basis
from .metrics import QualityReport, mse, psnr, ssim
from .noise import AiryPattern, AzimuthalBands, CircularBands, airy_intensity, bessel_j1, gen_banding_polar
from .transform import (
    HybridConfig,
    MeasurementModel,
    TransformOrder,
    fwht_natural,
    hybrid_wht,
    sequency_to_natural_index,
    wht2d,
    wht_sequency,
)

__version__ = "0.1.0"
