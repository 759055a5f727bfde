"""Figure rendering for grid reports.

Kept separate so the exact-arithmetic core never imports matplotlib; the
CLI pulls this in only when a figure file is requested.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_grid(samples, path, title=None):
    """Render DH grid samples as a heatmap image file.

    Skipped wall points (absent samples) show as gaps in the heatmap.
    """
    xs = sorted({float(s.point[0]) for s in samples})
    ys = sorted({float(s.point[1]) for s in samples})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    data = np.full((len(ys), len(xs)), np.nan)
    for s in samples:
        data[yi[float(s.point[1])], xi[float(s.point[0])]] = s.value
    fig, ax = plt.subplots(figsize=(5.0, 4.2))
    im = ax.imshow(data, origin="lower", interpolation="nearest",
                   extent=(min(xs), max(xs), min(ys), max(ys)), cmap="viridis")
    fig.colorbar(im, ax=ax, label="DH value")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
