#!/usr/bin/env python3

from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
import pytest

from barbell_search.plots import Curve, emit_svg  # pylint: disable=import-error

_TIMES = np.linspace(0.0, 10.0, 51)


def _curves() -> list[Curve]:
    return [
        Curve("a", _TIMES, np.sin(_TIMES) ** 2),
        Curve("b", _TIMES, np.cos(_TIMES) ** 2),
    ]


def test_emit_svg(outputs_folder: Path) -> None:
    target = outputs_folder / "plot.svg"
    emit_svg(_curves(), target, title="N=64")
    text = target.read_text(encoding="utf-8")
    assert text.lstrip().startswith("<?xml")
    assert 'id="curve-0"' in text
    assert 'id="curve-1"' in text
    assert "switch-t" not in text


def test_emit_svg_switch_markers(outputs_folder: Path) -> None:
    target = outputs_folder / "plot.svg"
    emit_svg(_curves(), target, switch_times=[104.47, 147.81])
    text = target.read_text(encoding="utf-8")
    assert 'id="switch-t104.470"' in text
    assert 'id="switch-t147.810"' in text


def test_emit_svg_is_reproducible(outputs_folder: Path) -> None:
    first, second = outputs_folder / "first.svg", outputs_folder / "second.svg"
    emit_svg(_curves(), first, switch_times=[5.0])
    emit_svg(_curves(), second, switch_times=[5.0])
    assert first.read_bytes() == second.read_bytes()


def test_emit_svg_single_point(outputs_folder: Path) -> None:
    target = outputs_folder / "point.svg"
    emit_svg([Curve("", np.array([1.0]), np.array([0.5]))], target)
    assert 'id="curve-0"' in target.read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "curves",
    [
        [],
        [Curve("a", np.array([]), np.array([]))],
    ],
)
def test_emit_svg_rejects_empty(outputs_folder: Path, curves: list[Curve]) -> None:
    with pytest.raises(ValueError):
        emit_svg(curves, outputs_folder / "empty.svg")


def test_emit_svg_closes_figure_on_write_error(outputs_folder: Path) -> None:
    with pytest.raises(OSError):
        emit_svg(_curves(), outputs_folder / "missing" / "plot.svg")
    assert not plt.get_fignums()
