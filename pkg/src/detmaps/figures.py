"""Figure rendering for the report paths.

Each CLI command that writes delimited data can also render a matplotlib
figure next to it. Rendering is best-effort presentation; the CSV/JSON
files are the authoritative outputs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["save_sweep_figure", "save_bloch_figure", "save_spectrum_figure"]


def save_spectrum_figure(eigs, classification: str, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    idx = np.arange(1, len(eigs) + 1)
    ax.bar(idx, eigs, color=["#b4443c" if e < 0 else "#3c6eb4" for e in eigs])
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xticks(idx)
    ax.set_xlabel("eigenvalue index (ascending)")
    ax.set_ylabel("eigenvalue")
    ax.set_title(f"dynamical-matrix spectrum ({classification})")
    ax.set_yscale("symlog", linthresh=1e-7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_sweep_figure(rows, variable: str, path: Path) -> Path:
    values = np.array([r["sweep_value"] for r in rows])
    eigs = np.array([r["eigs"] for r in rows])
    tols = np.array([r["tol_cls"] for r in rows])
    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(6.0, 5.0), sharex=True, gridspec_kw={"height_ratios": [1, 2]})
    top.plot(values, eigs[:, 3], color="#3c6eb4")
    top.set_ylabel("largest eigenvalue")
    for i, color in ((0, "#999999"), (1, "#b4443c"), (2, "#3c6eb4")):
        bottom.plot(values, eigs[:, i], color=color, label=f"eig{i + 1}")
    bottom.plot(values, -tols, color="k", lw=0.6, ls="--", label="-tol_cls")
    bottom.axhline(0.0, color="k", lw=0.6)
    bottom.set_yscale("symlog", linthresh=1e-8)
    bottom.set_xlabel(f"sweep variable {variable}")
    bottom.set_ylabel("eigenvalues")
    bottom.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_bloch_figure(image, path: Path) -> Path:
    fig = plt.figure(figsize=(5.5, 5.5))
    ax = fig.add_subplot(projection="3d")
    u = np.linspace(0, 2 * np.pi, 24)
    v = np.linspace(0, np.pi, 16)
    ax.plot_wireframe(
        np.outer(np.cos(u), np.sin(v)),
        np.outer(np.sin(u), np.sin(v)),
        np.outer(np.ones_like(u), np.cos(v)),
        color="#d9c97a", alpha=0.25, lw=0.4)
    pts = np.array([s.output_vec for s in image.samples])
    outside = np.array([s.outside for s in image.samples])
    ax.scatter(*pts[~outside].T, s=2, color="#3c6eb4", alpha=0.5, label="inside")
    if outside.any():
        ax.scatter(*pts[outside].T, s=4, color="#b4443c", label="outside")
    ax.set_box_aspect((1, 1, 1))
    ax.set_title(f"Bloch image, outside fraction {image.outside_fraction:.4f}")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
