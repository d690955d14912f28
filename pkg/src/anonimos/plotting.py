"""Figures written next to the JSON reports."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from scipy.stats import rankdata  # noqa: E402


def plot_weights(original: Sequence[float], anonymized: Sequence[float], path: str) -> None:
    """Two panels: weight values before/after, and their ranks before/after.

    A cloud with no diagonal trend in the right panel is what a scrambled
    ordering looks like.
    """
    w = np.asarray(original, dtype=float)
    x = np.asarray(anonymized, dtype=float)
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 4))

    left.scatter(w, x, s=10, alpha=0.7)
    left.set_xlabel("original weight")
    left.set_ylabel("anonymized weight")
    left.set_title("values")

    right.scatter(rankdata(w), rankdata(x), s=10, alpha=0.7, color="tab:orange")
    right.set_xlabel("original rank")
    right.set_ylabel("anonymized rank")
    right.set_title("ordering")

    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
