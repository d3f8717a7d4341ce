"""Optional matplotlib rendering alongside the delimited reports.

Everything here is opt-in via the CLI --figures flag; the data tables remain
the primary output.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_distribution_figure(values: Sequence[float], name: str, out_dir, n_bins: int = 30) -> str:
    """Histogram of a log-space variable, written as <name>.png."""
    os.makedirs(out_dir, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(list(values), bins=n_bins, color="#4878a8", edgecolor="white")
    ax.set_xlabel(name)
    ax.set_ylabel("count")
    ax.set_title(f"Distribution of {name}")
    path = os.path.join(out_dir, f"{name}.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_fit_figure(fitted: Sequence[float], residuals: Sequence[float], model_name: str, out_dir) -> str:
    """Residuals against fitted values for one model, written as fit_<model>.png."""
    os.makedirs(out_dir, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter(list(fitted), list(residuals), s=8, alpha=0.5, color="#4878a8")
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("fitted")
    ax.set_ylabel("residual")
    ax.set_title(f"Model {model_name}: residuals vs fitted")
    path = os.path.join(out_dir, f"fit_{model_name}.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
