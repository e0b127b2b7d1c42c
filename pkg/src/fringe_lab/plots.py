"""Figure rendering for sweep outputs: the continuous screen pattern as a red
line over the acquired histogram as blue bars, saved as PNG next to the CSVs."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .detector import AcquiredHistogram  # noqa: E402
from .optics import IntensityProfile  # noqa: E402


def render_sweep_point(profile: IntensityProfile, hist: AcquiredHistogram,
                       path, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(hist.bin_centers * 1e3, hist.bin_values, width=hist.bin_width * 1e3,
           color="tab:blue", alpha=0.7, linewidth=0, label="detected")
    ax.plot(profile.x_grid * 1e3, profile.values, color="tab:red", linewidth=1.0,
            label="on screen")
    ax.set_xlabel("x (mm)")
    ax.set_ylabel("intensity (norm.)")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
