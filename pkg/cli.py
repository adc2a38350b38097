#!/usr/bin/env python3
"""XY chain entanglement CLI - batch front end producing plot-ready tables."""
import argparse
import logging
import math
import sys
import time
from pathlib import Path

import numpy as np

from xychain.data.table1 import TABLE1, TABLE1_SIZES
from xychain.errors import FitError, SizeLimitError, ValidationError, XYChainError
from xychain.oracle import MAX_ORACLE_SITES, write_fixtures
from xychain.output import RunManifest, write_csv, write_json, write_manifest
from xychain.scalefit import (
    PEAK_SIZES,
    SeriesPoint,
    compare_table1,
    extract_nu,
    fit_algebraic,
    fit_inverse_n,
    fit_log_n,
    peak_slope_series,
    table1_fit,
)
from xychain.spectrum import ModelPoint, Sector
from xychain.sweep import (
    SweepSpec,
    entangle_row,
    gap_row,
    parse_range,
    parse_sizes,
    run_ordered,
    spectrum_rows,
    states_from_text,
    thermo_row,
)
from xychain.thermo import divergence_fit

logger = logging.getLogger("xychain.cli")

RESULTS_DIR = Path("results")

ENERGY_UNITS = {"h": "J", "energy": "J", "gap": "J", "e_zero": "J", "e_half": "J"}
ENTANGLE_UNITS = {"h": "J", "xi_star": "rad", "e_log2": "bit", "density": "bit/spin",
                  "log_lambda_max": "nat"}
THERMO_UNITS = {"h": "J", "xi_star": "rad", "density": "bit/spin", "dE_dh": "bit/spin/J"}


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stdout,
    )


def output_path(args, default_stem: str) -> Path:
    if args.out:
        return Path(args.out)
    return RESULTS_DIR / f"{default_stem}.{args.format}"


def write_table(path: Path, fmt: str, columns, rows, units) -> Path:
    if fmt == "json":
        return write_json(path, {"columns": list(columns), "units": units,
                                 "rows": [list(row) for row in rows]})
    return write_csv(path, columns, rows, units)


def finish(manifest: RunManifest, primary: Path, started: float) -> None:
    manifest.wall_time = round(time.perf_counter() - started, 6)
    write_manifest(primary, manifest)


# -----------------------------------------------------------------------------
# Subcommands
# -----------------------------------------------------------------------------

def cmd_spectrum(args):
    started = time.perf_counter()
    spec = SweepSpec(r_values=(args.r,), h_values=tuple(parse_range(args.h)),
                     sizes=(args.n,), fmt=args.format)
    tasks = [(args.r, float(h), args.n) for h in spec.h_values]
    path = output_path(args, "gap" if args.gap else "spectrum")

    if args.gap:
        rows = run_ordered(gap_row, tasks, args.jobs)
        columns = ["h", "gap", "e_zero", "e_half"]
        crossings = int(np.count_nonzero(np.diff(np.sign([row[1] for row in rows])) != 0))
        logger.info("gap r=%g n=%d: %d sign changes over %d fields", args.r, args.n, crossings, len(rows))
    else:
        rows = [row for block in run_ordered(spectrum_rows, tasks, args.jobs) for row in block]
        columns = ["h", "level", "energy", "parity"]
        logger.info("spectrum r=%g n=%d: %d levels at %d fields", args.r, args.n, 2 ** args.n, len(tasks))

    manifest = RunManifest("spectrum", vars(args).copy())
    manifest.record(write_table(path, args.format, columns, rows, ENERGY_UNITS))
    finish(manifest, path, started)
    return path


def cmd_entangle(args):
    started = time.perf_counter()
    spec = SweepSpec(
        r_values=tuple(parse_range(args.r)),
        h_values=tuple(parse_range(args.h)),
        sizes=parse_sizes(args.n),
        states=states_from_text(args.state, args.superposition),
        fmt=args.format,
    )
    rows = run_ordered(entangle_row, spec.points(), args.jobs)
    columns = ["r", "h", "n", "state", "sector", "xi_star", "lambda_max",
               "log_lambda_max", "e_log2", "density", "degenerate"]

    path = output_path(args, "entangle")
    manifest = RunManifest("entangle", vars(args).copy())
    manifest.record(write_table(path, args.format, columns, rows, ENTANGLE_UNITS))
    finish(manifest, path, started)
    logger.info("entangle: %d rows", len(rows))
    return path


def cmd_thermo(args):
    started = time.perf_counter()
    spec = SweepSpec(r_values=tuple(parse_range(args.r)), h_values=tuple(parse_range(args.h)),
                     fmt=args.format)
    tasks = [(float(r), float(h)) for r in spec.r_values for h in spec.h_values]
    rows = run_ordered(thermo_row, tasks, args.jobs)
    columns = ["r", "h", "xi_star", "density", "dE_dh"]

    path = output_path(args, "thermo")
    manifest = RunManifest("thermo", vars(args).copy())
    manifest.record(write_table(path, args.format, columns, rows, THERMO_UNITS))

    if args.divergence:
        report = {}
        for r in spec.r_values:
            if r <= 0.0:
                continue
            fit = divergence_fit(float(r))
            expected = 1.0 / (2 * math.pi * r * math.log(2))
            report[f"{r:g}"] = {"above": fit.above, "below": fit.below,
                                "coefficient": fit.coefficient, "expected": expected}
            logger.info("r=%g: divergence amplitude %.6f (1/(2 pi r ln2) = %.6f)",
                        r, fit.coefficient, expected)
        manifest.report["divergence"] = report

    finish(manifest, path, started)
    return path


def _synthetic_report():
    ns = [10, 20, 50, 100, 200, 500, 1000]
    inverse = fit_inverse_n([SeriesPoint(n, 0.1 + 2 / n - 3 / n ** 2) for n in ns])
    log = fit_log_n([SeriesPoint(n, 4 * math.log(n) + 1) for n in ns])
    algebraic = fit_algebraic([SeriesPoint(n, 3 * n ** -0.5) for n in ns])
    nu = extract_nu(1.0, coefficient=0.25, slope=0.5)
    checks = {
        "inverse_n": np.allclose(inverse.coefficients, (0.1, 2.0, -3.0), atol=1e-10),
        "log_n": np.allclose(log.coefficients, (4.0, 1.0), atol=1e-10),
        "algebraic": np.allclose(algebraic.coefficients, (-0.5, 3.0), atol=1e-10),
        "nu": abs(nu - 0.5) < 1e-12,
    }
    if not all(checks.values()):
        raise FitError(f"synthetic self-test failed: {checks}")
    return {
        "inverse_n": inverse.to_dict(),
        "log_n": log.to_dict(),
        "algebraic": algebraic.to_dict(),
        "nu": nu,
        "checks": {k: bool(v) for k, v in checks.items()},
    }


def cmd_fit(args):
    started = time.perf_counter()
    payload = {}
    if args.table1:
        sizes = parse_sizes(args.sizes) if args.sizes else TABLE1_SIZES
        rows = []
        for r in sorted(TABLE1):
            for sector in (Sector.HALF, Sector.ZERO):
                comparison = compare_table1(r, sector, table1_fit(r, sector, sizes, args.jobs))
                rows.append(comparison.to_dict())
                e_inf, b, c = comparison.fit.coefficients
                print(f"{r:<5} {sector.label:<5} {e_inf:<12.8f} {b:<10.6f} {c:<10.5f} "
                      f"{'ok' if comparison.within_tolerance else 'MISMATCH'}")
        payload["table1"] = rows
    if args.nu:
        sizes = parse_sizes(args.sizes) if args.sizes else PEAK_SIZES
        coefficient = divergence_fit(args.r).coefficient
        slope_fit = fit_log_n(peak_slope_series(args.r, sizes, jobs=args.jobs))
        nu = extract_nu(args.r, coefficient=coefficient, slope=slope_fit.coefficients[0])
        payload["nu"] = {"r": args.r, "coefficient": coefficient,
                         "peak_slope_fit": slope_fit.to_dict(), "nu": nu}
        print(f"r={args.r}: nu = {nu:.4f}")
    if args.synthetic:
        payload["synthetic"] = _synthetic_report()
        print("synthetic self-test passed")
    if not payload:
        raise ValidationError("choose at least one of --table1, --nu, --synthetic")

    path = Path(args.out) if args.out else RESULTS_DIR / "fit.json"
    manifest = RunManifest("fit", vars(args).copy())
    manifest.record(write_json(path, payload))
    finish(manifest, path, started)
    return path


def cmd_oracle(args):
    started = time.perf_counter()
    sizes = parse_sizes(args.sizes)
    if max(sizes) > MAX_ORACLE_SITES:
        raise SizeLimitError(f"oracle fixtures limited to n <= {MAX_ORACLE_SITES}")
    directory = Path(args.out) if args.out else RESULTS_DIR / "fixtures"
    paths = write_fixtures(directory, ModelPoint(args.r, args.h), sizes=sizes)

    manifest = RunManifest("oracle", vars(args).copy())
    for path in paths:
        manifest.record(path)
    finish(manifest, directory, started)
    return directory


# -----------------------------------------------------------------------------
# Entry point
# -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="Output path (default under results/)")
    common.add_argument("--format", choices=["csv", "json"], default="csv", help="Table format")
    common.add_argument("--jobs", type=int, default=1, help="Worker processes for grid rows")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(
        description="Geometric entanglement of transverse-field XY chains",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python cli.py spectrum --r 1 --n 4 --h 0:2:201        All 16 levels vs field
  python cli.py spectrum --r 0.2 --n 8 --gap            Signed sector splitting
  python cli.py entangle --r 0 --n 100 --h 0:1.2:121    XX staircase
  python cli.py entangle --r 1 --n 10 --superposition 0,0.3927,0.7854,1.5708
  python cli.py thermo --r 1,0.5,0 --h 0:2:201 --divergence
  python cli.py fit --table1 --jobs 4                   Finite-size coefficients
  python cli.py fit --nu --r 0.1 --jobs 5               Correlation-length exponent
  python cli.py oracle --sizes 4:13:10                  Regression fixtures
        """
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # spectrum command
    p = subparsers.add_parser("spectrum", parents=[common], help="Energy levels vs field")
    p.add_argument("--r", type=float, default=1.0, help="Anisotropy")
    p.add_argument("--n", type=int, default=4, help="Chain length (<= 20)")
    p.add_argument("--h", default="0:2:201", help="Field range start:stop:count or list")
    p.add_argument("--gap", action="store_true", help="Only the sector splitting E0 - E1/2")

    # entangle command
    p = subparsers.add_parser("entangle", parents=[common], help="Finite-n entanglement sweep")
    p.add_argument("--r", default="1", help="Anisotropy range or list")
    p.add_argument("--h", default="0:2:101", help="Field range or list")
    p.add_argument("--n", default="100", help="Chain length(s)")
    p.add_argument("--state", default="ground", help="ground, half, zero (comma list allowed)")
    p.add_argument("--superposition", help="Comma list of mix angles in [0, pi/2]")

    # thermo command
    p = subparsers.add_parser("thermo", parents=[common], help="Thermodynamic-limit density")
    p.add_argument("--r", default="1,0.5,0", help="Anisotropy range or list")
    p.add_argument("--h", default="0:2:101", help="Field range or list")
    p.add_argument("--divergence", action="store_true",
                   help="Fit the critical divergence amplitude for every r > 0")

    # fit command
    p = subparsers.add_parser("fit", parents=[common], help="Finite-size scaling fits (JSON)")
    p.add_argument("--table1", action="store_true", help="Fit e_inf + b/n + c/n^2 at h = 1")
    p.add_argument("--nu", action="store_true", help="Extract nu from the two divergences")
    p.add_argument("--synthetic", action="store_true", help="Run the model-in-model self-test")
    p.add_argument("--r", type=float, default=0.1, help="Anisotropy for --nu")
    p.add_argument("--sizes", help="Override the chain lengths")

    # oracle command
    p = subparsers.add_parser("oracle", parents=[common], help="Exact-diagonalization fixtures")
    p.add_argument("--r", type=float, default=1.0, help="Anisotropy")
    p.add_argument("--h", type=float, default=0.8, help="Field")
    p.add_argument("--sizes", default="4:13:10", help="Chain lengths for the overlap fixture")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        {
            "spectrum": cmd_spectrum,
            "entangle": cmd_entangle,
            "thermo": cmd_thermo,
            "fit": cmd_fit,
            "oracle": cmd_oracle,
        }[args.command](args)
    except XYChainError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
