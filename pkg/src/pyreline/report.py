"""Figure rendering for run reports.

Figures are written next to the delimited outputs when a run or the
`report` subcommand asks for them; the scenario runner itself only
emits CSV/JSON.
"""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .density import DensitySeries  # noqa: E402


def density_figure(
    series: DensitySeries,
    out_path,
    title: str = "",
    boundaries=(),
    cycle_ends=(),
    tail_fraction: float = 0.5,
):
    """Density vs turn, with phase boundaries and cycle ends marked."""
    turns = series.turns
    dens = series.densities()
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(turns, dens, lw=1.1, color="#c0392b", label="|B_n| / |V_n|")
    if len(series) >= 2:
        window_start = turns[len(turns) - int(np.ceil(tail_fraction * len(turns)))]
        ax.axvspan(window_start, turns[-1], alpha=0.08, color="grey", label="tail window")
    for i, t in enumerate(boundaries):
        ax.axvline(t, color="#2980b9", lw=0.6, alpha=0.5, label="phase boundary" if i == 0 else None)
    for i, t in enumerate(cycle_ends):
        ax.axvline(t, color="#27ae60", lw=0.8, ls="--", alpha=0.7, label="cycle end" if i == 0 else None)
    if len(turns) and turns[-1] > 10_000:
        ax.set_xscale("log")
    ax.set_xlabel("turn n")
    ax.set_ylabel("burning density")
    ax.set_ylim(-0.02, 1.05)
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def sweep_figure(rows, out_path, title: str = "parameter sweep"):
    """Tail-density band per sweep row."""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    names = [r["name"].split("__")[-1] for r in rows]
    lo = [r["tail_min"] for r in rows]
    hi = [r["tail_max"] for r in rows]
    xs = np.arange(len(rows))
    ax.vlines(xs, lo, hi, color="#8e44ad", lw=3, alpha=0.7)
    ax.scatter(xs, [r["final_density"] for r in rows], color="#2c3e50", zorder=3, s=18,
               label="final density")
    ax.set_xticks(xs)
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("tail density range")
    ax.set_ylim(-0.02, 1.05)
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def series_from_trace_csv(path) -> DensitySeries:
    """Rebuild a density series from a trace CSV (possibly subsampled)."""
    ns, vs, bs = [], [], []
    with open(path) as fh:
        for row in csv.DictReader(fh):
            ns.append(int(row["n"]))
            vs.append(int(row["vertices"]))
            bs.append(int(row["burning"]))
    return DensitySeries(np.array(ns), np.array(vs), np.array(bs))
