"""CSV/JSON report writers and figure rendering for the command line tools.

CSV output uses '.' as the decimal separator regardless of locale; JSON
reports carry a ``config`` echo so a run can be reproduced from its
artifacts alone.  Figures are rendered with the Agg backend next to the
delimited output they illustrate.
"""

from __future__ import annotations

import csv
import json
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["write_csv", "write_json", "write_matrix_csv", "line_figure", "matrix_figure"]


def write_csv(path: str, header, rows) -> str:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])
    return path


def write_json(path: str, payload: dict) -> str:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_matrix_csv(path: str, matrix) -> str:
    """Complex matrix as CSV with Re and Im columns interleaved."""
    rows = []
    for row in matrix:
        flat = []
        for z in row:
            flat.append(_fmt(z.real))
            flat.append(_fmt(z.imag))
        rows.append(flat)
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    return path


def line_figure(path: str, x, series: dict, xlabel: str, ylabel: str,
                title: str = "", logy: bool = False) -> str:
    """One-axes line plot; `series` maps label -> y array."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, y in series.items():
        ax.plot(x, y, label=label, linewidth=1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if logy:
        ax.set_yscale("log")
    if len(series) > 1:
        ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def matrix_figure(path: str, matrix, title: str = "") -> str:
    """Heatmap of |matrix| entries."""
    import numpy as np

    fig, ax = plt.subplots(figsize=(5.0, 4.2))
    im = ax.imshow(np.abs(matrix), aspect="equal", origin="upper")
    fig.colorbar(im, ax=ax, shrink=0.85)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)
