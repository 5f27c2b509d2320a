"""Render the report figures to files (headless matplotlib backend)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_curve_figure(rows, path):
    """Per-mode concurrence curves, one line per gap value.

    ``rows`` are (epsilon, gap, concurrence) triples as emitted by the
    curve command.
    """
    by_gap = {}
    for eps, gap, c in rows:
        by_gap.setdefault(gap, ([], []))
        by_gap[gap][0].append(eps)
        by_gap[gap][1].append(c)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for gap in sorted(by_gap):
        eps, c = by_gap[gap]
        ax.plot(eps, c, label=rf"$\Delta = {gap:g}$")
    ax.set_xlabel(r"$\epsilon_k - \mu$")
    ax.set_ylabel(r"$C_k$")
    ax.set_ylim(-0.02, 1.05)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_surface_figure(n1_values, n2_values, mep_grid, path,
                        n1_scale="log", n2_scale="log"):
    """MEP over the (n1, n2) plane; ``mep_grid[i][j]`` belongs to (n1[i], n2[j])."""
    n1 = np.asarray(n1_values, dtype=float)
    n2 = np.asarray(n2_values, dtype=float)
    z = np.asarray(mep_grid, dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    mesh = ax.pcolormesh(n1, n2, z.T, shading="nearest", cmap="viridis",
                         vmin=0.0, vmax=max(1e-30, float(z.max())))
    ax.set_xscale(n1_scale)
    ax.set_yscale(n2_scale)
    ax.set_xlabel(r"$n_1$")
    ax.set_ylabel(r"$n_2$")
    fig.colorbar(mesh, ax=ax, label="MEP")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_table_figure(rows, path, reference=None):
    """Horizontal bars of -log10(MEP) per material, optional reference marks."""
    reference = reference or {}
    names = [r.name for r in rows]
    neg = [r.neg_log10_mep for r in rows]
    finite = [v for v in neg if math.isfinite(v)]
    ceiling = (max(finite) if finite else 1.0) * 1.15 + 0.5
    bars = [v if math.isfinite(v) else ceiling for v in neg]
    fig, ax = plt.subplots(figsize=(6.0, 0.6 * len(rows) + 1.5))
    y = np.arange(len(rows))
    ax.barh(y, bars, color="#3a6ea5", label="computed")
    refs = [(i, reference[n]) for i, n in enumerate(names) if n in reference]
    if refs:
        ax.plot([v for _, v in refs], [i for i, _ in refs], "kd",
                markersize=6, label="reference")
    ax.set_yticks(y, names)
    ax.invert_yaxis()
    ax.set_xlabel(r"$-\log_{10}(\mathrm{MEP})$")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
