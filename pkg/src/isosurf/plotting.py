"""Static PNG figures for CLI reports (Agg backend, files only)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def surface_figure(points: np.ndarray, color: np.ndarray, path, title: str = "", label: str = "K"):
    """3D surface colored by a per-vertex scalar."""
    fig = plt.figure(figsize=(6, 5))
    ax = fig.add_subplot(projection="3d")
    c = np.nan_to_num(np.asarray(color, float))
    span = np.ptp(c) or 1.0
    colors = plt.cm.viridis((c - c.min()) / span)
    ax.plot_surface(points[..., 0], points[..., 1], points[..., 2], facecolors=colors,
                    linewidth=0, antialiased=False, shade=False)
    mappable = plt.cm.ScalarMappable(cmap="viridis")
    mappable.set_array(c)
    fig.colorbar(mappable, ax=ax, shrink=0.6, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    ax.set_title(title)
    return _save(fig, path)


def curve_figure(s, z, path, xlabel="s", ylabel="z", title=""):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(s, z, lw=1.5)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(alpha=0.3)
    return _save(fig, path)


def roundtrip_figure(s, prescribed, recovered, path, quantity="K"):
    """Prescribed profile against recovered curvature, with the error on a log axis."""
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(5, 5), sharex=True)
    top.plot(s, prescribed, "k-", lw=1.5, label="prescribed")
    top.plot(s, recovered, "o", ms=3, label="recovered")
    top.set_ylabel(quantity)
    top.legend()
    err = np.abs(np.asarray(recovered) - np.asarray(prescribed))
    bottom.semilogy(s, np.maximum(err, 1e-18))
    bottom.set_xlabel("s")
    bottom.set_ylabel("|error|")
    for ax in (top, bottom):
        ax.grid(alpha=0.3)
    return _save(fig, path)
