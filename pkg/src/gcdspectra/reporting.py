"""File output for experiment reports: canonical JSON, series CSV, and a
rendered figure.

Everything written here is byte-deterministic for a given report: JSON
uses sorted keys and repr floats, CSV is the report's own serialization,
and the figure strips the renderer's software tag so identical reports
produce identical PNG files.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  backend must be pinned first

from .experiments import ConvergenceReport

__all__ = [
    "report_json_text",
    "render_series_figure",
    "write_convergence_outputs",
]


def report_json_text(report) -> str:
    """Canonical JSON for anything exposing to_json_dict()."""
    return json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"


def render_series_figure(report: ConvergenceReport, path) -> None:
    """Plot the eigenvalue series against n and save it."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    if report.series:
        ns = [n for n, _ in report.series]
        vs = [v for _, v in report.series]
        ax.plot(ns, vs, marker=".", markersize=4, linewidth=1.0, color="tab:blue")
    ax.set_xlabel("n")
    ax.set_ylabel(f"eigenvalue #{report.q} (ascending)")
    ax.set_title(f"{report.fn_text} on {report.sequence_spec}")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def write_convergence_outputs(report: ConvergenceReport, out_dir) -> list[Path]:
    """Write report.json, series.csv, and series.png into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "report.json", out / "series.csv", out / "series.png"]
    paths[0].write_text(report_json_text(report))
    paths[1].write_text(report.to_csv())
    render_series_figure(report, paths[2])
    return paths
