"""Matplotlib figures for sweep curves and benchmark histories.

Figures are written straight to files; the Agg backend is forced so this
works headless. The output format follows the file suffix (svg, png, pdf).
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .validation import measure_name  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "genodiv",
    "svg.fonttype": "none",
}


def _save(fig, path):
    # drop the timestamp so repeated runs give identical files
    fig.savefig(path, metadata={"Date": None} if str(path).endswith((".svg", ".pdf")) else None)
    plt.close(fig)


def plot_sweeps(curves, path):
    """One panel per measure: D(P5) against x5_hat (solid) with D(P4) dashed."""
    with plt.rc_context(STYLE):
        cols = min(len(curves), 2)
        rows = int(np.ceil(len(curves) / cols))
        fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 2.5 * rows), squeeze=False)
        for ax, curve in zip(axes.flat, curves):
            ax.plot(curve.x5_hat, curve.d_p5, color="k", lw=1.2, label="P5")
            ax.axhline(curve.d_p4, color="k", ls="--", lw=1.0, label="P4")
            ax.set_xlim(0, 1)
            ax.set_xlabel("normalized location of x5")
            ax.set_ylabel(measure_name(curve.measure))
        for ax in list(axes.flat)[len(curves):]:
            ax.set_visible(False)
        axes.flat[0].legend(frameon=False)
        fig.tight_layout()
        _save(fig, path)


def plot_benchmark(result, path):
    """Mean NMDF-normalised diversity per iteration, shaded by one standard deviation."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.0))
        t = np.arange(result.config.iterations) + 1
        for m in result.measures:
            mu, sd = result.mean[m], result.std[m]
            line, = ax.plot(t, mu, lw=1.2, label=f"{measure_name(m)} (N)")
            ax.fill_between(t, mu - sd, mu + sd, color=line.get_color(), alpha=0.15, lw=0)
        ax.set_xlim(1, result.config.iterations)
        ax.set_ylim(0, 1.05)
        ax.set_xlabel("iteration")
        ax.set_ylabel("normalized diversity")
        ax.set_title(f"{result.config.optima_count} optima, {result.config.repetitions} repetitions")
        ax.legend(frameon=False)
        fig.tight_layout()
        _save(fig, path)
