"""Command-line front end.

Subcommands:

* ``sweep``           analytic error-probability curves over an alpha^2 grid -> CSV
* ``params``          optimal displacement/squeezing at one amplitude -> stdout
* ``verify-gaussian`` scan the Gaussian-measurement landscape, check the optimum
* ``montecarlo``      click-level simulation sweep -> CSV (provenance=montecarlo)
* ``plot``            render sweep CSVs as a deterministic SVG chart

Exit codes: 0 success, 2 partial sweep (some points omitted), 3 optimizer
failure, 4 input format error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .core import (
    BinaryEnsemble,
    BracketError,
    ConvergenceError,
    CsvFormatError,
    DetectorModel,
    RECEIVER_TAGS,
    ReceiverResult,
    TruncationError,
    UnsupportedConfigurationError,
)
from .montecarlo import RNG_ID, McConfig, sweep_montecarlo
from .optimize import (
    solve_type1_params,
    solve_type2_gamma,
    solve_type2_gamma_imperfect,
    verify_gaussian_optimum,
)
from .receivers import (
    helstrom,
    homodyne_limit,
    homodyne_limit_attenuated,
    kennedy_error,
    kennedy_raw_error,
    type1_error,
    type2_error,
    type2_imperfect_error,
)
from .sweepio import read_csv, row_from_result, write_csv
from .svgplot import render_svg

__all__ = ["main"]

_SOLVER_FAILURES = (ConvergenceError, BracketError, TruncationError, UnsupportedConfigurationError)


def _parse_receivers(text: str) -> list[str]:
    tags = []
    for part in text.split(","):
        tag = part.strip().replace("-", "_")
        if not tag:
            continue
        if tag not in RECEIVER_TAGS:
            raise argparse.ArgumentTypeError(
                f"unknown receiver {part.strip()!r}; choose from {', '.join(RECEIVER_TAGS)}"
            )
        tags.append(tag)
    return tags


def _parse_grid(text: str) -> list[float]:
    """Either ``lo:hi:n`` (inclusive linear spacing) or a comma list."""
    if ":" in text:
        lo_s, hi_s, n_s = text.split(":")
        n = int(n_s)
        if n < 1:
            raise argparse.ArgumentTypeError("grid needs at least one point")
        return [float(v) for v in np.linspace(float(lo_s), float(hi_s), n)]
    return [float(part) for part in text.split(",") if part.strip()]


def _alpha_grid(args) -> np.ndarray:
    if args.alpha_sq_min >= args.alpha_sq_max:
        raise argparse.ArgumentTypeError("--alpha-sq-min must be below --alpha-sq-max")
    if args.points < 2:
        raise argparse.ArgumentTypeError("--points must be at least 2")
    if args.scale == "log":
        return np.logspace(
            math.log10(args.alpha_sq_min), math.log10(args.alpha_sq_max), args.points
        )
    return np.linspace(args.alpha_sq_min, args.alpha_sq_max, args.points)


def _detector(args) -> DetectorModel:
    return DetectorModel(eta=args.eta, nu=args.nu, tau=args.tau, xi=args.xi)


def _add_detector_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eta", type=float, default=1.0, help="quantum efficiency")
    p.add_argument("--nu", type=float, default=0.0, help="mean dark counts per pulse")
    p.add_argument("--tau", type=float, default=1.0, help="tap transmittance")
    p.add_argument("--xi", type=float, default=1.0, help="mode-match factor")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha-sq-min", type=float, default=1e-2)
    p.add_argument("--alpha-sq-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=60)
    p.add_argument("--scale", choices=("log", "linear"), default="log")


def _eval_receiver(tag: str, ensemble: BinaryEnsemble, det: DetectorModel) -> ReceiverResult:
    if tag == "helstrom":
        return ReceiverResult("helstrom", helstrom(ensemble))
    if tag == "homodyne":
        return ReceiverResult("homodyne", homodyne_limit(ensemble))
    if tag == "homodyne_tau":
        return ReceiverResult(
            "homodyne_tau", homodyne_limit_attenuated(ensemble, det), detector=det
        )
    if tag in ("kennedy", "kennedy_imperfect"):
        return kennedy_error(ensemble, det)
    if tag == "kennedy_raw":
        return kennedy_raw_error(ensemble, det)
    if tag == "type1":
        return type1_error(ensemble, det)
    if tag == "type2":
        return type2_error(ensemble, det)
    if tag == "type2_imperfect":
        return type2_imperfect_error(ensemble, det)
    raise ValueError(f"unknown receiver tag {tag!r}")


def _cmd_sweep(args) -> int:
    grid = _alpha_grid(args)
    det = _detector(args)
    rows = []
    omitted = 0
    for alpha_sq in grid:
        ensemble = BinaryEnsemble(math.sqrt(alpha_sq))
        for tag in args.receivers:
            try:
                result = _eval_receiver(tag, ensemble, det)
            except _SOLVER_FAILURES as exc:
                print(
                    f"warning: {tag} at alpha_sq={alpha_sq!r}: {exc}", file=sys.stderr
                )
                omitted += 1
                continue
            rows.append(row_from_result(float(alpha_sq), result))
    write_csv(
        args.out,
        rows,
        metadata={
            "tool": "bpskrx sweep",
            "receivers": ",".join(args.receivers),
            "eta": repr(det.eta),
            "nu": repr(det.nu),
            "tau": repr(det.tau),
            "xi": repr(det.xi),
            "scale": args.scale,
            "points": args.points,
        },
    )
    return 2 if omitted else 0


def _cmd_params(args) -> int:
    alpha = math.sqrt(args.alpha_sq)
    try:
        gamma = solve_type2_gamma(alpha, args.eta)
        pair = solve_type1_params(alpha, args.eta)
    except _SOLVER_FAILURES as exc:
        print(f"error: optimizer failed: {exc}", file=sys.stderr)
        return 3
    beta, r = pair.value
    print(f"alpha_sq={args.alpha_sq!r} eta={args.eta!r}")
    print(f"gamma_opt={gamma.value!r} residual={gamma.residual:.3e}")
    print(f"beta_opt={beta!r} r_opt={r!r} residual={pair.residual:.3e}")
    return 0


def _cmd_verify_gaussian(args) -> int:
    ensemble = BinaryEnsemble(math.sqrt(args.alpha_sq))
    r_grid = args.r_grid if args.r_grid is not None else [float(k) for k in range(9)]
    phi_grid = (
        args.phi_grid
        if args.phi_grid is not None
        else [float(v) for v in np.linspace(0.0, math.pi, 7)]
    )
    points, summary = verify_gaussian_optimum(ensemble, r_grid, phi_grid)
    if args.out:
        lines = [
            f"# tool=bpskrx verify-gaussian",
            f"# alpha_sq={args.alpha_sq!r}",
            "r,phi,e,p_error",
        ]
        lines += [
            f"{p.r!r},{p.phi!r},{p.e!r},{p.p_error!r}" for p in points
        ]
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    verdict = "DEGENERATE" if summary.degenerate else ("PASS" if summary.optimal else "FAIL")
    print(f"argmin at (r_max, phi=0): {verdict} ({summary.note})")
    print(
        f"argmin: r={summary.argmin.r!r} phi={summary.argmin.phi!r} "
        f"p_error={summary.argmin.p_error!r}"
    )
    return 0 if (summary.optimal or summary.degenerate) else 1


def _cmd_montecarlo(args) -> int:
    grid = _alpha_grid(args)
    det = _detector(args)
    template = McConfig(
        trials=args.trials,
        seed=args.seed,
        ensemble=BinaryEnsemble(1.0),
        detector=det,
        gamma=0.0,
    )
    estimates = sweep_montecarlo(grid, template)
    rows = []
    for alpha_sq, est in zip(grid, estimates):
        gamma = solve_type2_gamma_imperfect(math.sqrt(alpha_sq), det).value
        tag = "type2" if det.ideal_coupling else "type2_imperfect"
        result = ReceiverResult(
            tag, est.p_hat, provenance="montecarlo", gamma_opt=gamma, detector=det
        )
        rows.append(row_from_result(float(alpha_sq), result, std_err=est.std_err))
    write_csv(
        args.out,
        rows,
        metadata={
            "tool": "bpskrx montecarlo",
            "seed": args.seed,
            "trials": args.trials,
            "rng_id": RNG_ID,
            "eta": repr(det.eta),
            "nu": repr(det.nu),
            "tau": repr(det.tau),
            "xi": repr(det.xi),
        },
    )
    return 0


def _cmd_plot(args) -> int:
    rows = []
    for path in args.csv:
        try:
            _, file_rows = read_csv(path)
        except CsvFormatError as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return 4
        except OSError as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return 4
        rows.extend(file_rows)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bpskrx",
        description="Binary coherent-state receivers: sweeps, optima, simulation, plots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="analytic error curves over an alpha^2 grid")
    _add_grid_flags(p)
    _add_detector_flags(p)
    p.add_argument(
        "--receivers",
        type=_parse_receivers,
        default=["helstrom", "homodyne", "kennedy", "type1", "type2"],
        help="comma-separated receiver tags (hyphens and underscores both accepted)",
    )
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("params", help="optimal receiver parameters at one amplitude")
    p.add_argument("--alpha-sq", type=float, required=True)
    p.add_argument("--eta", type=float, default=1.0)
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser(
        "verify-gaussian", help="scan Gaussian measurements, verify homodyne wins"
    )
    p.add_argument("--alpha-sq", type=float, required=True)
    p.add_argument(
        "--r-grid", type=_parse_grid, default=None, help="comma list or lo:hi:n"
    )
    p.add_argument(
        "--phi-grid", type=_parse_grid, default=None, help="comma list or lo:hi:n"
    )
    p.add_argument("--out", default=None, help="optional landscape CSV path")
    p.set_defaults(func=_cmd_verify_gaussian)

    p = sub.add_parser("montecarlo", help="click-level simulation sweep")
    _add_grid_flags(p)
    _add_detector_flags(p)
    p.add_argument("--seed", type=int, default=20260814)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_montecarlo)

    p = sub.add_parser("plot", help="render sweep CSVs to SVG")
    p.add_argument("csv", nargs="+", help="input CSV paths")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
