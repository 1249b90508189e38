"""Figures for the report commands. Uses the non-interactive Agg backend."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def hilbert_figure(hilbert: list[int], omega: list[int], title: str, out: str | Path) -> Path:
    """Plot ring and canonical-ideal slice sizes per degree on a log scale."""
    out = Path(out)
    degrees = list(range(len(hilbert)))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(degrees, hilbert, "o-", label="ring")
    ax.plot(degrees, omega, "s--", label="canonical ideal")
    if any(v > 0 for v in hilbert + omega):
        ax.set_yscale("symlog", linthresh=1)
    ax.set_xlabel("degree N")
    ax.set_ylabel("monomials of degree N")
    ax.set_title(title)
    ax.set_xticks(degrees)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=100)
    plt.close(fig)
    return out
