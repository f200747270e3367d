import math

import mpmath
import numpy as np
import pytest

from polarwalsh.convert import disk_mask
from polarwalsh.geometry import MeasureKind, PolarGrid
from polarwalsh.noise import (
    AiryPattern,
    AzimuthalBands,
    CircularBands,
    add_noise,
    airy_intensity,
    bessel_j1,
    gen_banding_polar,
    render_airy,
    render_noise,
)
from polarwalsh.transform import HybridConfig, wht2d

GRID8 = PolarGrid(8, 8, 4.0)


def j1_series(x, terms=40):
    return sum((-1) ** m * (x / 2) ** (2 * m + 1) / (math.factorial(m) * math.factorial(m + 1)) for m in range(terms))


def j1_integral(x, intervals=20000):
    # (1/pi) * int_0^pi cos(t - x sin t) dt, composite Simpson
    t = np.linspace(0.0, np.pi, intervals + 1)
    w = np.ones(intervals + 1)
    w[1:-1:2] = 4
    w[2:-1:2] = 2
    x = np.atleast_1d(x)[:, None]
    f = np.cos(t[None, :] - x * np.sin(t[None, :]))
    return (f @ w) * (np.pi / intervals / 3) / np.pi


def bisect(f, lo, hi, tol=1e-13):
    flo = f(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (flo > 0):
            lo, flo = mid, f(mid)
        else:
            hi = mid
    return (lo + hi) / 2


def golden_max(f, lo, hi, tol=1e-10):
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    while b - a > tol:
        c, d = b - g * (b - a), a + g * (b - a)
        if f(c) > f(d):
            b = d
        else:
            a = c
    return (a + b) / 2


class TestBanding:
    def test_8x8_circular_period2(self):
        z = 3.0
        expected = np.zeros((8, 8))
        expected[0::2] = z
        np.testing.assert_array_equal(gen_banding_polar(GRID8, CircularBands(2, z)).values, expected)

    def test_8x8_circular_period4(self):
        expected = np.zeros((8, 8))
        expected[[0, 1, 4, 5]] = 1.0
        np.testing.assert_array_equal(gen_banding_polar(GRID8, CircularBands(4, 1.0)).values, expected)

    def test_8x8_azimuthal_period2(self):
        expected = np.zeros((8, 8))
        expected[:, 0::2] = 1.0
        np.testing.assert_array_equal(gen_banding_polar(GRID8, AzimuthalBands(2, 1.0)).values, expected)

    def test_8x8_azimuthal_period4(self):
        expected = np.tile([1.0, 1.0, 0, 0, 1.0, 1.0, 0, 0], (8, 1))
        np.testing.assert_array_equal(gen_banding_polar(GRID8, AzimuthalBands(4, 1.0)).values, expected)

    def test_zero_amplitude(self):
        np.testing.assert_array_equal(gen_banding_polar(GRID8, CircularBands(2, 0.0)).values, 0.0)

    def test_circular_bands_carry_their_measure(self):
        grid = PolarGrid(8, 8, 4.0, MeasureKind.UNIFORM_AREA)
        p = gen_banding_polar(grid, CircularBands(2, 1.0, MeasureKind.UNIFORM_RADIAL))
        assert p.grid.measure is MeasureKind.UNIFORM_RADIAL

    @pytest.mark.parametrize("spec", [CircularBands(3, 1.0), CircularBands(16, 1.0), AzimuthalBands(0, 1.0),
                                      AzimuthalBands(6, 1.0), CircularBands(2, -1.0)])
    def test_invalid_period_or_amplitude(self, spec):
        with pytest.raises(ValueError):
            gen_banding_polar(GRID8, spec)

    def test_airy_is_not_banding(self):
        with pytest.raises(TypeError):
            gen_banding_polar(GRID8, AiryPattern())

    @pytest.mark.parametrize("n", [8, 16, 32])
    def test_spectral_signature_exhaustive(self, n):
        grid = PolarGrid(n, n, 4.0)
        cfg = HybridConfig()
        for period in range(2, n + 1, 2):
            if n % period:
                continue
            circ = wht2d(gen_banding_polar(grid, CircularBands(period, 5.0)).values, cfg)
            assert np.abs(circ[:, 1:]).max() < 1e-10
            azi = wht2d(gen_banding_polar(grid, AzimuthalBands(period, 5.0)).values, cfg)
            assert np.abs(azi[1:, :]).max() < 1e-10


class TestBessel:
    def test_zero(self):
        assert bessel_j1(0.0) == 0.0

    def test_j1_of_one(self):
        assert j1_series(1.0) == pytest.approx(0.4400505857, abs=1e-10)
        assert bessel_j1(1.0) == pytest.approx(j1_series(1.0), abs=1e-14)

    def test_first_zero(self):
        root = bisect(j1_series, 3.0, 4.5)
        assert root == pytest.approx(3.8317059702, abs=1e-9)
        assert abs(bessel_j1(root)) < 1e-12

    def test_odd(self):
        x = np.linspace(0, 40, 81)
        np.testing.assert_array_equal(bessel_j1(-x), -bessel_j1(x))

    def test_high_precision_reference(self):
        xs = np.linspace(0.0, 100.0, 4001)
        ref = np.array([float(mpmath.besselj(1, x)) for x in xs])
        assert np.abs(bessel_j1(xs) - ref).max() <= 1e-10

    def test_integral_representation(self):
        xs = np.arange(0.0, 50.0 + 1e-9, 0.5)
        np.testing.assert_allclose(bessel_j1(xs), j1_integral(xs), atol=1e-8)

    @pytest.mark.parametrize("x", [1e4, -2e4, np.inf, np.nan])
    def test_out_of_range(self, x):
        with pytest.raises(ValueError):
            bessel_j1(x)


class TestAiry:
    def test_center(self):
        assert airy_intensity(0.0, 7.0) == 7.0

    def test_first_dark_ring(self):
        assert airy_intensity(3.8317059702, 1.0) < 1e-9

    def test_first_bright_ring(self):
        peak = golden_max(lambda x: (2 * j1_series(x) / x) ** 2, 4.5, 6.0)
        assert peak == pytest.approx(5.13562, abs=1e-5)
        assert airy_intensity(peak, 1.0) == pytest.approx(0.0175, abs=5e-5)

    def test_bounded(self):
        x = np.linspace(0, 200, 20001)
        vals = airy_intensity(x, 3.0)
        assert np.all(vals >= 0) and np.all(vals <= 3.0)

    def test_negative_argument(self):
        with pytest.raises(ValueError):
            airy_intensity(-1.0)

    def test_render_center_and_dark_ring(self):
        size = 1024
        img = render_airy(size, 2 * math.pi, 255.0, 1.0)
        c = size // 2
        assert img[c, c] == 255.0
        profile = img[c, c : c + int(0.8 * c)]
        dark = np.argmin(profile[int(0.3 * c):]) + int(0.3 * c)
        assert dark / c == pytest.approx(3.8317059702 / (2 * math.pi), abs=1.5 / c)

    def test_enhance_brightens_outer_rings(self):
        plain = render_airy(256, 2 * math.pi, 255.0, 1.0)
        bright = render_airy(256, 2 * math.pi, 255.0, 3.0)
        ring = plain[128, 128 + 100]
        assert bright[128, 128 + 100] > ring

    def test_zero_intensity_is_black(self):
        assert np.all(render_airy(64, 2 * math.pi, 0.0) == 0.0)

    def test_outside_disk_black(self):
        img = render_airy(64)
        assert np.all(img[~disk_mask(64, 64)] == 0.0)


class TestAddNoise:
    def test_zero_noise(self, rng):
        img = rng.uniform(0, 255, size=(8, 8))
        np.testing.assert_array_equal(add_noise(img, np.zeros_like(img)), img)

    def test_saturation(self):
        assert add_noise([[200.0]], [[100.0]], clamp=True)[0, 0] == 255.0
        assert add_noise([[200.0]], [[100.0]], clamp=False)[0, 0] == 300.0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            add_noise(np.zeros((4, 4)), np.zeros((4, 5)))

    def test_constant_plus_circular_bands(self):
        noise = render_noise(CircularBands(2, 30.0), 64, 64, n1=8, n2=8)
        out = add_noise(np.full((64, 64), 50.0), noise)
        mask = disk_mask(64, 64)
        assert set(np.unique(out[mask])) == {50.0, 80.0}
        assert np.all(out[~mask] == 50.0)
        # innermost ring carries the band value
        assert out[32, 32] == 80.0

    def test_render_noise_airy_requires_square(self):
        with pytest.raises(ValueError):
            render_noise(AiryPattern(), 32, 64)
