"""Figure rendering for the report commands.

Each sweep command can drop a PNG next to its CSV; the CSV stays the
contract, the figure is a convenience view of the same rows.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_validate_bound_figure(rows: list[dict], path: str) -> None:
    """Scatter of per-trial minimum outlier scores against the threshold."""
    gammas = np.array([row["gamma"] for row in rows])
    q_out = np.array([row["q_outlier_min"] for row in rows])
    zeta = rows[0]["zeta"]

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.scatter(gammas, q_out, s=8, alpha=0.35, label="min outlier score (per trial)")
    uniq = sorted(set(gammas.tolist()))
    means = [next(r["mean_q_inlier_max"] for r in rows if r["gamma"] == g) for g in uniq]
    ax.plot(uniq, means, "o-", color="tab:orange", label="mean max inlier score")
    ax.axhline(zeta, color="tab:red", linestyle="--", label="threshold")
    ax.set_xlabel("outlier fraction")
    ax.set_ylabel("score (rad)")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _grid_figure(rows, x_col, y_col, value_col, path, xlabel, ylabel, title):
    xs = sorted({row[x_col] for row in rows})
    ys = sorted({row[y_col] for row in rows})
    grid = np.full((len(ys), len(xs)), np.nan)
    for row in rows:
        grid[ys.index(row[y_col]), xs.index(row[x_col])] = row[value_col]

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    mesh = ax.pcolormesh(
        np.arange(len(xs) + 1), np.arange(len(ys) + 1), grid, cmap="gray", vmin=0.0, vmax=100.0
    )
    ax.set_xticks(np.arange(len(xs)) + 0.5, [f"{x:g}" for x in xs], rotation=45, fontsize=7)
    ax.set_yticks(np.arange(len(ys)) + 0.5, [f"{y:g}" for y in ys], fontsize=7)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=9)
    fig.colorbar(mesh, ax=ax, label="%")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_phase_inliers_figure(rows: list[dict], path: str) -> None:
    _grid_figure(
        rows,
        x_col="ratio",
        y_col="n_inliers",
        value_col="inlier_recovery_pct",
        path=path,
        xlabel="rank / ambient dimension",
        ylabel="inlier count",
        title="inliers recovered (%)",
    )


def save_phase_subspace_figure(rows: list[dict], path: str) -> None:
    _grid_figure(
        rows,
        x_col="n_outliers",
        y_col="n_inliers",
        value_col="recovery_pct",
        path=path,
        xlabel="outlier count",
        ylabel="inlier count",
        title="exact subspace recovery (%)",
    )


def save_compare_figure(rows: list[dict], path: str) -> None:
    """Median log recovery error per algorithm along the sweep axis."""
    # Pick whichever count actually varies as the x axis.
    for x_col, xlabel in (
        ("n_outliers", "outlier count"),
        ("n_inliers", "inlier count"),
        ("gamma", "outlier fraction"),
    ):
        if len({row[x_col] for row in rows}) > 1:
            break

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for algorithm, marker in (("roma", "o"), ("cop", "s")):
        sub = [row for row in rows if row["algorithm"] == algorithm]
        xs = sorted({row[x_col] for row in sub})
        # Exact recoveries can be -inf; pin them to a finite floor for display.
        med = [
            max(float(np.median([r["lre"] for r in sub if r[x_col] == x])), -16.0) for x in xs
        ]
        ax.plot(xs, med, marker=marker, label=algorithm)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("median log recovery error")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
