#!/usr/bin/env python3
"""Probability-versus-time figures written as standalone SVG."""

from collections.abc import Sequence
from itertools import cycle
from pathlib import Path
from typing import Final, NamedTuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .log import logger  # noqa: E402
from .type_defs import RealArray  # noqa: E402

# (color, linestyle): solid black, dashed red, dotted green, dot-dashed blue,
# dot-dot-dashed orange, dash-dash-dotted brown
CURVE_STYLES: Final = (
    ("black", "-"),
    ("red", "--"),
    ("green", ":"),
    ("blue", "-."),
    ("orange", (0, (3, 2, 1, 2, 1, 2))),
    ("brown", (0, (6, 2, 6, 2, 1, 2))),
)
SVG_RC: Final = {"svg.hashsalt": "barbell-search", "svg.fonttype": "none"}


class Curve(NamedTuple):
    label: str
    times: RealArray
    values: RealArray


def emit_svg(
    curves: Sequence[Curve],
    path: Path,
    *,
    title: str = "",
    switch_times: Sequence[float] = (),
    x_label: str = "t",
    y_label: str = "probability",
) -> None:
    if not curves or any(not len(c.times) for c in curves):
        raise ValueError("cannot plot empty data")

    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        for nr, (curve, (color, linestyle)) in enumerate(zip(curves, cycle(CURVE_STYLES))):
            (line,) = ax.plot(
                curve.times,
                curve.values,
                color=color,
                linestyle=linestyle,
                marker="o" if len(curve.times) == 1 else None,
                label=curve.label,
            )
            line.set_gid(f"curve-{nr}")

        for switch_time in switch_times:
            marker = ax.axvline(switch_time, color="black", linestyle="--", linewidth=0.8)
            marker.set_gid(f"switch-t{switch_time:.3f}")

        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
        ax.set_ylim(bottom=0.0)
        if title:
            ax.set_title(title)
        if any(c.label for c in curves):
            ax.legend()
        fig.tight_layout()
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)

    logger.info("Wrote %d curves to %s", len(curves), path)
