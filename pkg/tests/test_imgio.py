import numpy as np
import pytest

from polarwalsh.convert import PolarImage
from polarwalsh.geometry import MeasureKind, PolarGrid
from polarwalsh.imgio import (
    FormatError,
    decode_pgm,
    decode_polar,
    encode_pgm,
    encode_polar,
    quantize,
    read_pgm,
    read_polar,
    read_vector,
    write_pgm,
    write_polar,
)


class TestPgm:
    def test_single_pixel_bytes(self):
        assert encode_pgm([[128.0]]) == b"P5\n1 1\n255\n\x80"

    def test_round_half_up(self):
        assert encode_pgm([[127.5]]) == b"P5\n1 1\n255\n\x80"
        np.testing.assert_array_equal(quantize([[0.49, 0.5, 254.5, -3.0, 300.0]]), [[0, 1, 255, 0, 255]])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            quantize([[np.nan]])

    @pytest.mark.parametrize("mode", ["P5", "P2"])
    def test_round_trip(self, tmp_path, rng, mode):
        img = rng.integers(0, 256, size=(16, 16)).astype(float)
        path = tmp_path / "a.pgm"
        write_pgm(img, path, mode)
        np.testing.assert_array_equal(read_pgm(path), img)

    def test_non_square_orientation(self):
        img = np.arange(6.0).reshape(2, 3)
        data = encode_pgm(img)
        assert data.startswith(b"P5\n3 2\n255\n")
        np.testing.assert_array_equal(decode_pgm(data), img)

    def test_comments_in_header(self):
        data = b"P2\n# made by hand\n2 1\n# max\n255\n7 9\n"
        np.testing.assert_array_equal(decode_pgm(data), [[7.0, 9.0]])

    @pytest.mark.parametrize("data", [
        b"P5\n1 1\n65535\n\x00\x00",
        b"P5\n2 2\n255\n\x00\x01",
        b"P5\nx 1\n255\n\x00",
        b"P6\n1 1\n255\n\x00\x00\x00",
        b"P5\n1",
        b"P2\n2 1\n255\n3\n",
        b"P2\n1 1\n255\n300\n",
    ])
    def test_errors(self, data):
        with pytest.raises(FormatError):
            decode_pgm(data)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            encode_pgm([[0.0]], mode="P3")


class TestPolarFile:
    @pytest.mark.parametrize("measure", list(MeasureKind))
    def test_round_trip_bit_identical(self, tmp_path, rng, measure):
        p = PolarImage(PolarGrid(4, 8, 31.0, measure), rng.normal(size=(4, 8)) * 1e3)
        path = tmp_path / "x.pwp"
        write_polar(p, path)
        back = read_polar(path)
        assert back.grid == p.grid
        assert back.values.tobytes() == p.values.astype("<f8").tobytes()

    def test_header_layout(self):
        data = encode_polar(PolarImage(PolarGrid(2, 4, 16.0), np.zeros((2, 4))))
        assert data.startswith(b"PWP1\n2 4 1/2 16.0\n")
        assert len(data) == len(b"PWP1\n2 4 1/2 16.0\n") + 8 * 8

    def test_half_parses_as_area(self):
        data = b"PWP1\n2 2 1/2 4.0\n" + np.arange(4.0).astype("<f8").tobytes()
        p = decode_polar(data)
        assert p.grid.measure is MeasureKind.UNIFORM_AREA
        np.testing.assert_array_equal(p.values, [[0, 1], [2, 3]])

    @pytest.mark.parametrize("data", [
        b"PWP2\n2 2 1/2 4.0\n" + bytes(32),
        b"PWP1\n2 2 1/2 4.0\n" + bytes(31),
        b"PWP1\n2 2 1/3 4.0\n" + bytes(32),
        b"PWP1\n3 2 1/2 4.0\n" + bytes(48),
        b"PWP1\n2 2 1/2\n" + bytes(32),
        b"PWP1\n2 2 1/2 4.0",
    ])
    def test_errors(self, data):
        with pytest.raises(FormatError):
            decode_polar(data)


class TestVector:
    def test_file(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("1 0\n1\t0\n")
        np.testing.assert_array_equal(read_vector(path), [1, 0, 1, 0])

    def test_stdin(self, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("2.5 -1"))
        np.testing.assert_array_equal(read_vector("-"), [2.5, -1.0])

    def test_bad(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("1 two")
        with pytest.raises(FormatError):
            read_vector(path)
