"""Command-line front end.

Subcommands::

    threshold       print the parameter-free outlier-score threshold
    detect          classify the columns of a CSV matrix
    synth           generate a labeled synthetic dataset
    validate-bound  trial-by-trial check of the threshold across gamma
    phase-inliers   inlier-recovery grid over (rank, inlier count)
    phase-subspace  exact-recovery grid over (inlier count, outlier count)
    compare         angle detector vs Coherence Pursuit

Input CSVs hold one row per ambient dimension and one column per point,
no header unless --header is passed.  Sweep commands write CSV (stdout
by default) and optionally a PNG figure via --fig.  Exit codes: 0 ok,
2 usage, 3 parse failure, 4 degenerate data.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import experiments
from .detector import detect
from .errors import DegenerateCdfError, MatrixParseError, RomaError, ZeroColumnError
from .synth import SynthSpec, assemble_dataset
from .thresholds import roma_threshold

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DEGENERATE = 4


class UsageError(RomaError):
    pass


def _float_grid(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("grid is empty")
    return values


def _int_grid(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("grid is empty")
    return values


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _alpha(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1), got {value}")
    return value


def read_matrix_csv(path: str, skip_header: bool = False) -> np.ndarray:
    """Parse a CSV of rows = dimensions, columns = points."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as exc:
        raise MatrixParseError(f"cannot read {path}: {exc}") from exc
    if skip_header and rows:
        rows = rows[1:]
    rows = [row for row in rows if row]
    if not rows:
        raise MatrixParseError(f"{path}: no data rows")
    width = len(rows[0])
    matrix = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MatrixParseError(f"{path}: row {i} has {len(row)} fields, expected {width}")
        try:
            matrix[i] = [float(cell) for cell in row]
        except ValueError as exc:
            raise MatrixParseError(f"{path}: row {i}: {exc}") from exc
    if not np.all(np.isfinite(matrix)):
        raise MatrixParseError(f"{path}: non-finite entries")
    return matrix


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def write_rows_csv(path: str | None, columns: tuple[str, ...], rows: list[dict]) -> None:
    fh, close = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_cell(row[col]) for col in columns])
    finally:
        if close:
            fh.close()


def write_matrix_csv(path: str | None, matrix: np.ndarray) -> None:
    fh, close = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        for row in matrix:
            writer.writerow([format(float(v), ".17g") for v in row])
    finally:
        if close:
            fh.close()


def _write_json(path: str | None, payload: dict) -> None:
    fh, close = _open_out(path)
    try:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    finally:
        if close:
            fh.close()


def _cmd_threshold(args) -> int:
    print(format(roma_threshold(args.n, args.N, args.alpha), ".10g"))
    return EXIT_OK


def _cmd_detect(args) -> int:
    matrix = read_matrix_csv(args.input, skip_header=args.header)
    part = detect(matrix, alpha=args.alpha)
    payload = {
        "threshold": part.threshold,
        "cut_index": part.cut_index,
        "all_outliers": part.all_outliers,
        "outliers": [int(i) for i in part.outliers],
        "inliers": [int(i) for i in part.inliers],
        "scores": [float(s) for s in part.scores.scores],
    }
    _write_json(args.out, payload)
    return EXIT_OK


def _cmd_synth(args) -> int:
    spec = SynthSpec(
        n=args.n, N=args.N, r=args.r, gamma=args.gamma, snr_db=args.snr_db, seed=args.seed
    )
    ds = assemble_dataset(spec)
    write_matrix_csv(args.out, ds.matrix)
    if args.labels_out:
        _write_json(
            args.labels_out,
            {
                "n": spec.n,
                "N": spec.N,
                "r": spec.r,
                "gamma": spec.gamma,
                "snr_db": spec.snr_db,
                "seed": spec.seed,
                "inliers": [int(i) for i in ds.true_inliers],
                "outliers": [int(i) for i in ds.true_outliers],
            },
        )
    return EXIT_OK


def _cmd_validate_bound(args) -> int:
    rows = experiments.validate_bound(
        n=args.n,
        r=args.r,
        N=args.N,
        gammas=args.gamma_grid,
        trials=args.trials,
        alpha=args.alpha,
        seed=args.seed,
        snr_db=args.snr_db,
    )
    write_rows_csv(args.out, experiments.VALIDATE_BOUND_COLUMNS, rows)
    if args.fig:
        from .plots import save_validate_bound_figure

        save_validate_bound_figure(rows, args.fig)
    return EXIT_OK


def _cmd_phase_inliers(args) -> int:
    if (args.r_grid is None) == (args.ratio_grid is None):
        raise UsageError("pass exactly one of --r-grid or --ratio-grid")
    ranks = args.r_grid or [max(3, round(ratio * args.n)) for ratio in args.ratio_grid]
    rows = experiments.phase_inliers(
        n=args.n,
        N=args.N,
        ranks=ranks,
        inlier_counts=args.n_inliers_grid,
        trials=args.trials,
        alpha=args.alpha,
        seed=args.seed,
    )
    write_rows_csv(args.out, experiments.PHASE_INLIERS_COLUMNS, rows)
    if args.fig:
        from .plots import save_phase_inliers_figure

        save_phase_inliers_figure(rows, args.fig)
    return EXIT_OK


def _cmd_phase_subspace(args) -> int:
    rows = experiments.phase_subspace(
        n=args.n,
        r=args.r,
        inlier_counts=args.n_inliers_grid,
        outlier_counts=args.n_outliers_grid,
        trials=args.trials,
        alpha=args.alpha,
        seed=args.seed,
    )
    write_rows_csv(args.out, experiments.PHASE_SUBSPACE_COLUMNS, rows)
    if args.fig:
        from .plots import save_phase_subspace_figure

        save_phase_subspace_figure(rows, args.fig)
    return EXIT_OK


def _compare_cells(args) -> list[tuple[int, int]]:
    chosen = [
        args.gamma_grid is not None,
        args.n_inliers_grid is not None,
        args.n_outliers_grid is not None,
    ]
    if sum(chosen) != 1:
        raise UsageError(
            "pass exactly one of --gamma-grid (with --N), "
            "--n-inliers-grid (with --n-outliers), or --n-outliers-grid (with --n-inliers)"
        )
    if args.gamma_grid is not None:
        if args.N is None:
            raise UsageError("--gamma-grid requires --N")
        return experiments.cells_from_gammas(args.N, args.gamma_grid)
    if args.n_inliers_grid is not None:
        if args.n_outliers is None:
            raise UsageError("--n-inliers-grid requires --n-outliers")
        return [(n_in, args.n_outliers) for n_in in args.n_inliers_grid]
    if args.n_inliers is None:
        raise UsageError("--n-outliers-grid requires --n-inliers")
    return [(args.n_inliers, n_out) for n_out in args.n_outliers_grid]


def _cmd_compare(args) -> int:
    rows = experiments.compare(
        n=args.n,
        r=args.r,
        cells=_compare_cells(args),
        n_s=args.n_s,
        norm=args.norm,
        trials=args.trials,
        alpha=args.alpha,
        seed=args.seed,
    )
    write_rows_csv(args.out, experiments.COMPARE_COLUMNS, rows)
    if args.fig:
        from .plots import save_compare_figure

        save_compare_figure(rows, args.fig)
    return EXIT_OK


def _add_common(parser, trials_default: int = 200) -> None:
    parser.add_argument("--alpha", type=_alpha, default=0.05)
    parser.add_argument("--seed", type=_seed, default=0)
    parser.add_argument("--trials", type=int, default=trials_default)
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--fig", default=None, help="also render a PNG figure here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="print the outlier-score threshold")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--alpha", type=_alpha, default=0.05)
    p.set_defaults(handler=_cmd_threshold)

    p = sub.add_parser("detect", help="classify the columns of a CSV matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--header", action="store_true", help="skip one header line")
    p.add_argument("--alpha", type=_alpha, default=0.05)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_detect)

    p = sub.add_parser("synth", help="generate a labeled synthetic dataset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--labels-out", default=None, help="write ground-truth labels as JSON")
    p.set_defaults(handler=_cmd_synth)

    p = sub.add_parser("validate-bound", help="check the threshold across outlier fractions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--gamma-grid", type=_float_grid, required=True)
    p.add_argument("--snr-db", type=float, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_validate_bound)

    p = sub.add_parser("phase-inliers", help="inlier-recovery grid over rank and inlier count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r-grid", type=_int_grid, default=None)
    p.add_argument("--ratio-grid", type=_float_grid, default=None, help="rank/n values")
    p.add_argument("--n-inliers-grid", type=_int_grid, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_phase_inliers)

    p = sub.add_parser("phase-subspace", help="exact-recovery grid over inlier/outlier counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n-inliers-grid", type=_int_grid, required=True)
    p.add_argument("--n-outliers-grid", type=_int_grid, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_phase_subspace)

    p = sub.add_parser("compare", help="angle detector vs Coherence Pursuit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n-s", type=int, default=30, help="points kept by Coherence Pursuit")
    p.add_argument("--norm", choices=("l1", "l2"), default="l2")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--gamma-grid", type=_float_grid, default=None)
    p.add_argument("--n-inliers", type=int, default=None)
    p.add_argument("--n-inliers-grid", type=_int_grid, default=None)
    p.add_argument("--n-outliers", type=int, default=None)
    p.add_argument("--n-outliers-grid", type=_int_grid, default=None)
    _add_common(p, trials_default=50)
    p.set_defaults(handler=_cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatrixParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ZeroColumnError, DegenerateCdfError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
