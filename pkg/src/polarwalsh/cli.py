"""Command-line front end.

Exit status: 0 on success, 1 for data errors (bad files, incompatible
inputs), 2 for usage errors. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

import numpy as np

from . import imgio
from .convert import PolarImage, cartesian_to_polar, disk_mask, polar_to_cartesian
from .filter import FilterRequest, remove_banding, spectrum_report
from .geometry import MeasureKind, PolarGrid, is_power_of_two, render_basis
from .metrics import quality_report
from .noise import AiryPattern, AzimuthalBands, CircularBands, add_noise, render_noise
from .transform import HybridConfig, MeasurementModel, TransformOrder, fwht_natural, hybrid_wht, wht2d

log = logging.getLogger("polarwalsh")


def _pow2(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_power_of_two(n):
        raise argparse.ArgumentTypeError(f"{n} is not a power of two >= 2")
    return n


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"{n} must be positive")
    return n


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not x > 0 or not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"{text} must be a positive number")
    return x


def _seed(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return n


def _measure(text: str) -> MeasureKind:
    try:
        return MeasureKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n1", type=_pow2, default=256, help="ring count (power of two)")
    p.add_argument("--n2", type=_pow2, default=512, help="sector count (power of two)")
    p.add_argument("--measure", type=_measure, default=MeasureKind.UNIFORM_AREA,
                   help="area (f=1/2) or radial (f=1)")
    p.add_argument("--shots", type=_positive_int, default=None,
                   help="simulate this many measurement shots instead of exact probabilities")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--epsilon", type=_positive_float, default=1.0)
    p.add_argument("--peak", type=float, choices=(255.0, 512.0), default=255.0,
                   help="PSNR peak value (255 or 512)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="polarwalsh", description="Polar Walsh-Hadamard image processing.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common], help="1D WHT of a vector file or 2D WHT of a PGM")
    p.add_argument("input", help="vector file ('-' for stdin) or .pgm image")
    p.add_argument("-o", "--output", help="write result here instead of stdout")
    p.add_argument("--order", choices=("natural", "sequency"), default="sequency")

    p = sub.add_parser("basis", parents=[common], help="render a polar Walsh basis function")
    p.add_argument("output")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--order", choices=("natural", "sequency"), default="natural")
    p.add_argument("--size", type=_positive_int, default=256)

    p = sub.add_parser("to-polar", parents=[common], help="PGM -> PWP1 polar matrix")
    p.add_argument("input")
    p.add_argument("output")

    p = sub.add_parser("to-cartesian", parents=[common], help="PWP1 polar matrix -> PGM")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--rows", type=_positive_int)
    p.add_argument("--cols", type=_positive_int)

    p = sub.add_parser("gen-noise", parents=[common], help="write a synthetic noise image")
    p.add_argument("output")
    p.add_argument("--kind", choices=("circular", "azimuthal", "airy"), required=True)
    p.add_argument("--rows", type=_positive_int, default=512)
    p.add_argument("--cols", type=_positive_int, default=512)
    p.add_argument("--period", type=int, default=8)
    p.add_argument("--z", type=float, default=40.0, help="band amplitude")
    p.add_argument("--ka", type=_positive_float, default=2 * math.pi)
    p.add_argument("--i0", type=float, default=255.0)
    p.add_argument("--enhance", type=float, default=1.0)

    p = sub.add_parser("add-noise", parents=[common], help="pixelwise sum of an image and a noise image")
    p.add_argument("image")
    p.add_argument("noise")
    p.add_argument("output")
    p.add_argument("--no-clamp", action="store_true")

    p = sub.add_parser("denoise", parents=[common], help="remove circular and/or azimuthal banding")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--cflag", action="store_true", help="remove circular bands")
    p.add_argument("--aflag", action="store_true", help="remove azimuthal bands")

    p = sub.add_parser("spectrum", parents=[common], help="sequency spectrum summary of the polar image")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="also write the spectrum as a PWP1 file")

    p = sub.add_parser("metrics", parents=[common], help="MSE / PSNR / SSIM of two PGMs")
    p.add_argument("reference")
    p.add_argument("test")
    p.add_argument("--mask", choices=("none", "disk"), default="none",
                   help="restrict MSE/PSNR to the inscribed disk")
    return parser


def _hybrid(args) -> HybridConfig:
    if args.shots is None:
        model = MeasurementModel.exact()
    else:
        model = MeasurementModel.sampled(args.shots, args.seed)
    return HybridConfig(epsilon=args.epsilon, model=model)


def _format_rows(m: np.ndarray) -> str:
    m = np.atleast_2d(m)
    return "".join(" ".join(repr(float(v)) for v in row) + "\n" for row in m)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_transform(args) -> None:
    cfg = _hybrid(args)
    if args.input.lower().endswith((".pgm", ".pnm")):
        if args.order != "sequency":
            raise ValueError("2D transform is only defined in sequency order")
        result = wht2d(imgio.read_pgm(args.input), cfg)
    else:
        v = imgio.read_vector(args.input)
        result = fwht_natural(v) if args.order == "natural" else hybrid_wht(v, cfg)
    _emit(_format_rows(result), args.output)


def cmd_basis(args) -> None:
    grid = PolarGrid(args.n1, args.n2, float(args.size // 2), args.measure)
    order = TransformOrder(args.order)
    imgio.write_pgm(render_basis(grid, args.j, args.p, order, args.size), args.output)


def cmd_to_polar(args) -> None:
    img = imgio.read_pgm(args.input)
    imgio.write_polar(cartesian_to_polar(img, args.n1, args.n2, args.measure), args.output)


def cmd_to_cartesian(args) -> None:
    pimg = imgio.read_polar(args.input)
    side = int(2 * pimg.grid.r_max)
    rows = args.rows or side
    cols = args.cols or side
    imgio.write_pgm(polar_to_cartesian(pimg, rows, cols), args.output)


def cmd_gen_noise(args) -> None:
    if args.kind == "circular":
        spec = CircularBands(args.period, args.z, args.measure)
    elif args.kind == "azimuthal":
        spec = AzimuthalBands(args.period, args.z)
    else:
        spec = AiryPattern(args.i0, args.ka)
    img = render_noise(spec, args.rows, args.cols, args.n1, args.n2, args.enhance)
    imgio.write_pgm(img, args.output)


def cmd_add_noise(args) -> None:
    out = add_noise(imgio.read_pgm(args.image), imgio.read_pgm(args.noise), clamp=not args.no_clamp)
    imgio.write_pgm(out, args.output)


def _request(args, cflag=False, aflag=False) -> FilterRequest:
    return FilterRequest(args.n1, args.n2, args.measure, cflag, aflag, _hybrid(args))


def cmd_denoise(args) -> None:
    if not (args.cflag or args.aflag):
        log.warning("neither --cflag nor --aflag given; output is only the polar round trip")
    img = imgio.read_pgm(args.input)
    imgio.write_pgm(remove_banding(img, _request(args, args.cflag, args.aflag)), args.output)


def cmd_spectrum(args) -> None:
    img = imgio.read_pgm(args.input)
    req = _request(args)
    spectrum, summary = spectrum_report(img, req)
    if args.output:
        grid = cartesian_to_polar(img, req.n1, req.n2, req.measure).grid
        imgio.write_polar(PolarImage(grid, spectrum), args.output)
    sys.stdout.write("".join(f"{k}={v:.6f}\n" for k, v in summary.as_record().items()))


def cmd_metrics(args) -> None:
    a = imgio.read_pgm(args.reference)
    b = imgio.read_pgm(args.test)
    mask = disk_mask(*a.shape) if args.mask == "disk" else None
    sys.stdout.write(quality_report(a, b, args.peak, mask).as_record())


COMMANDS = {
    "transform": cmd_transform,
    "basis": cmd_basis,
    "to-polar": cmd_to_polar,
    "to-cartesian": cmd_to_cartesian,
    "gen-noise": cmd_gen_noise,
    "add-noise": cmd_add_noise,
    "denoise": cmd_denoise,
    "spectrum": cmd_spectrum,
    "metrics": cmd_metrics,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # own handler on the current stderr; basicConfig is a no-op when the host already configured logging
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(levelname)s: %(message)s"))
    log.handlers = [handler]
    log.propagate = False
    log.setLevel(logging.DEBUG if args.verbose else logging.WARNING)
    try:
        COMMANDS[args.command](args)
    except (ValueError, IndexError, OSError) as exc:
        log.error("%s", exc)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
