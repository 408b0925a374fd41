"""Optional figure rendering for the report path.

Turns a profile report into a correlation heatmap and per-metric histograms
saved as PNG next to the delimited outputs.  Kept out of the metric modules:
the data files remain the primary artifact and rendering is opt-in.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .profile import METRIC_FIELDS, MetricRecord, ProfileReport


def render_correlation_heatmap(
    metrics: tuple[str, ...], matrix: list[list[float | None]], path: str
) -> None:
    size = len(metrics)
    values = np.array(
        [[np.nan if v is None else v for v in row] for row in matrix], dtype=float
    )
    fig, ax = plt.subplots(figsize=(1.2 * size + 2, 1.2 * size + 1))
    image = ax.imshow(values, vmin=-1.0, vmax=1.0, cmap="RdBu")
    ax.set_xticks(range(size), labels=metrics, rotation=45, ha="right")
    ax.set_yticks(range(size), labels=metrics)
    for i in range(size):
        for j in range(size):
            cell = matrix[i][j]
            ax.text(
                j,
                i,
                "-" if cell is None else f"{cell:.2f}",
                ha="center",
                va="center",
                fontsize=8,
            )
    fig.colorbar(image, ax=ax, shrink=0.8)
    ax.set_title("pairwise metric correlations")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_metric_histograms(rows: list[MetricRecord], path: str) -> None:
    fig, axes = plt.subplots(2, 3, figsize=(12, 7))
    for ax, name in zip(axes.flat, METRIC_FIELDS):
        values = [r.metric(name) for r in rows if r.metric(name) is not None]
        if values:
            ax.hist(values, bins=min(20, max(5, len(values) // 2)), color="#4878a8")
        ax.set_title(name, fontsize=10)
    fig.suptitle("per-record metric distributions")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_profile_figures(
    report: ProfileReport, rows: list[MetricRecord], prefix: str
) -> list[str]:
    """Write <prefix>.correlation.png and <prefix>.metrics.png."""
    heatmap_path = f"{prefix}.correlation.png"
    hist_path = f"{prefix}.metrics.png"
    render_correlation_heatmap(report.metrics, report.correlation, heatmap_path)
    render_metric_histograms(rows, hist_path)
    return [heatmap_path, hist_path]
