"""BLER-versus-Eb/N0 figures written straight to image files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

MARKERS = "osd^v<>ph*"


def plot_bler(curves: dict, path, title: str | None = None, show_bound: bool = True) -> Path:
    """Plot ``{label: [BlerPoint, ...]}`` on a log scale and save to ``path``.

    Points carry 95% Clopper-Pearson bars; a stored union bound is drawn as a
    dashed line in the curve's colour.  Points with no errors are skipped.
    """
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.0, 3.8))
    for idx, (label, points) in enumerate(curves.items()):
        pts = sorted((p for p in points if p.block_errors > 0), key=lambda p: p.ebn0_db)
        if pts:
            x = np.array([p.ebn0_db for p in pts])
            y = np.array([p.bler for p in pts])
            ci = np.array([p.interval() for p in pts])
            err = np.vstack([y - ci[:, 0], ci[:, 1] - y])
            line = ax.errorbar(x, y, yerr=err, marker=MARKERS[idx % len(MARKERS)], ms=4,
                               capsize=2, lw=1.2, label=label)
            color = line[0].get_color()
        else:
            color = None
        bound = sorted((p for p in points if p.union_bound), key=lambda p: p.ebn0_db)
        if show_bound and bound:
            ax.plot([p.ebn0_db for p in bound], [p.union_bound for p in bound], ls="--", lw=0.9,
                    color=color, label=f"{label} bound")
    ax.set_yscale("log")
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("BLER")
    ax.grid(True, which="both", ls=":", lw=0.5)
    if title:
        ax.set_title(title)
    if curves:
        ax.legend(fontsize=7)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
