"""Figures written next to the CSV/JSON reports."""

from __future__ import annotations

from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
from matplotlib import pyplot as plt  # noqa: E402

_STYLE = {
    "exact": dict(color="tab:blue", marker="o"),
    "eberly": dict(color="tab:red", marker="s"),
}


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_timing(records, path, title="Fit time vs number of points"):
    """Log-log plot of seconds per fit against N, one line per method."""
    series = defaultdict(list)
    for rec in records:
        series[rec.method].append((rec.n_points, rec.seconds_per_fit))
    fig, ax = plt.subplots(figsize=(5.5, 4))
    for method, pts in series.items():
        pts.sort()
        ax.plot([n for n, _ in pts], [t * 1e3 for _, t in pts],
                label=method, **_STYLE.get(method, {}))
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("points per fit (N)")
    ax.set_ylabel("time per fit (ms)")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    _finish(fig, path)


def plot_case_reports(reports, path, title="RMS_MAX x 10^3 by case"):
    """Grouped bar chart of the error metric, log scale."""
    cases = list(dict.fromkeys(r.case_id for r in reports))
    methods = list(dict.fromkeys(r.method for r in reports))
    width = 0.8 / max(len(methods), 1)
    fig, ax = plt.subplots(figsize=(5.5, 4))
    for k, method in enumerate(methods):
        vals = {r.case_id: r.rms_max_e3 for r in reports if r.method == method}
        xs = [i + (k - (len(methods) - 1) / 2) * width for i in range(len(cases))]
        ax.bar(xs, [vals.get(c, 0.0) for c in cases], width=width, label=method,
               color=_STYLE.get(method, {}).get("color"))
    ax.set_xticks(range(len(cases)))
    ax.set_xticklabels([f"Case {c}" for c in cases])
    ax.set_yscale("log")
    ax.set_ylabel("RMS_MAX x 10^3")
    ax.set_title(title)
    ax.legend()
    _finish(fig, path)
