"""Figure rendering for the report paths.

Figures are written next to the delimited output files; nothing here affects
the numeric reports.  The Agg backend keeps rendering headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .orbits import ScanResult, orbit_action

__all__ = ["orbit_figure", "scan_figures"]


def scan_figures(result: ScanResult, base: Path) -> list[Path]:
    """Heatmap of the slant cosine near the argmax slice plus a histogram.

    Returns the written paths (``<base>_heatmap.png`` and ``<base>_hist.png``).
    """
    summary = result.summary()
    nx1, na, nb, nc = result.resolution
    params = result.params.reshape(nx1, na, nb, nc, 4)
    values = result.slant_cos.reshape(nx1, na, nb, nc)
    argmax = summary["argmax"]
    x1_axis = params[:, 0, 0, 0, 0]
    c_axis = params[0, 0, 0, :, 3]
    i_x1 = int(np.argmin(np.abs(x1_axis - argmax["x1"])))
    i_c = int(np.argmin(np.abs(c_axis - argmax["c"])))
    sheet = values[i_x1, :, :, i_c]
    a_axis = params[0, :, 0, 0, 1]
    b_axis = params[0, 0, :, 0, 2]

    written = []
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    im = ax.imshow(
        sheet.T,
        origin="lower",
        aspect="auto",
        extent=(a_axis[0], a_axis[-1], b_axis[0], b_axis[-1]),
        cmap="viridis",
        vmin=0.0,
        vmax=1.0 / 3.0,
    )
    ax.set_xlabel("a (rad)")
    ax.set_ylabel("b (rad)")
    ax.set_title(f"slant cosine at x1={x1_axis[i_x1]:.3f}, c={c_axis[i_c]:.3f}")
    fig.colorbar(im, ax=ax, label="cos(slant angle)")
    heat = base.with_name(base.stem + "_heatmap.png")
    fig.savefig(heat, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(heat)

    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    vals = result.slant_cos[result.regular]
    counts, _, _ = ax.hist(vals, bins=np.arange(0.0, 1.0 / 3.0 + 0.02, 0.01), color="#33658a")
    ax.axvline(1.0 / 3.0, color="crimson", lw=1.0, label="1/3 bound")
    ax.set_xlabel("cos(slant angle)")
    ax.set_ylabel("grid nodes")
    if counts.max() > 0:
        ax.set_yscale("log")
    ax.legend(loc="upper right")
    hist = base.with_name(base.stem + "_hist.png")
    fig.savefig(hist, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(hist)
    return written


def orbit_figure(point: np.ndarray, mesh: np.ndarray, geometry_json: dict, base: Path) -> Path:
    """Orbit point cloud projected onto its two leading principal axes."""
    centered = mesh - mesh.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    proj = centered @ vt[:2].T
    fig, ax = plt.subplots(figsize=(4.6, 4.2))
    ax.scatter(proj[:, 0], proj[:, 1], s=4, c="#33658a", alpha=0.7)
    start = (point - mesh.mean(axis=0)) @ vt[:2].T
    ax.scatter([start[0]], [start[1]], s=36, c="crimson", zorder=3, label="base point")
    ax.set_xlabel("principal axis 1")
    ax.set_ylabel("principal axis 2")
    ax.set_title(
        f"orbit (slant cos {geometry_json['slant_cos']:.4f}, "
        f"|H| {geometry_json['H_norm']:.2e}, K {geometry_json['K']:.1e})"
    )
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    path = base.with_name(base.stem + "_orbit.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
