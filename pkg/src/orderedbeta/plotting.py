"""Error-curve figures: relative error of both engines against the order N.

Rendering is optional plumbing around the delimited curve output; the data
rows stay the interface of record.  The Agg backend keeps rendering
headless-safe.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["error_curve_figure"]

# log-scale plots cannot show exact zeros; anything at or below this floor
# renders at the floor.
_LOG_FLOOR = 1e-18


def error_curve_figure(rows, path: str, title: str | None = None) -> str:
    """Render rows of (N, err_taylor, err_chebyshev) to a log-y figure.

    Returns the path written.
    """
    arr = np.asarray(list(rows), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] == 0:
        raise ValueError("rows must be a non-empty sequence of (N, err_taylor, err_chebyshev)")
    n = arr[:, 0]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogy(n, np.maximum(arr[:, 1], _LOG_FLOOR), "o-", label="taylor")
    ax.semilogy(n, np.maximum(arr[:, 2], _LOG_FLOOR), "s-", label="chebyshev")
    ax.set_xlabel("order N")
    ax.set_ylabel("relative error")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
