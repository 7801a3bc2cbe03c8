"""Static figure rendering for CLI reports.

Every report path can drop a PNG next to its CSV: selection curves for
optimize, a winner heatmap for phase-map, and a dispersion scatter. The CSV
stays the canonical artifact; figures are a convenience rendering of the
same rows and never feed back into any computation.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
import numpy as np  # noqa: E402


def selection_figure(rows, path) -> Path:
    """Per-solver sp0 versus K curves from optimize report rows."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    by_solver: dict[str, list] = {}
    for row in rows:
        by_solver.setdefault(row.solver, []).append(row)
    for solver, group in sorted(by_solver.items()):
        group = sorted(group, key=lambda r: r.k)
        ax.plot([r.k for r in group], [r.sp0 for r in group], marker="o", label=solver)
    ax.set_xlabel("K")
    ax.set_ylabel("sp0")
    ax.set_title("influencer social power by budget")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def phase_map_figure(phase_map, path) -> Path:
    """Winner-id heatmap over the (theta, omega) grid."""
    path = Path(path)
    thetas = np.asarray(phase_map.thetas)
    omegas = np.asarray(phase_map.omegas)
    fig, ax = plt.subplots(figsize=(6.0, 4.8))
    mesh = ax.pcolormesh(omegas, thetas, phase_map.winners, cmap="tab20", shading="nearest")
    fig.colorbar(mesh, ax=ax, label="winning agent (1-based)")
    ax.set_xlabel("omega")
    ax.set_ylabel("theta")
    ax.set_title("K=1 exhaustive winner")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def dispersion_figure(sweep, path) -> Path:
    """Scatter of sp0 against circular variance, sized by orbit multiplicity."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    r_values = [o.r_value for o in sweep.orbits]
    sp_values = [o.sp0 for o in sweep.orbits]
    sizes = [10 + 3 * o.size for o in sweep.orbits]
    ax.scatter(r_values, sp_values, s=sizes, alpha=0.6, edgecolors="none")
    ax.set_xlabel("circular variance R")
    ax.set_ylabel("sp0")
    title = "dispersion vs social power"
    if sweep.pearson is not None:
        title += f" (pearson {sweep.pearson:.3f})"
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


__all__ = ["selection_figure", "phase_map_figure", "dispersion_figure"]
