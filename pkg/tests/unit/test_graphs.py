#!/usr/bin/env python3

from pathlib import Path

from barbell_search.barbell import validate_params, WalkKind  # pylint: disable=import-error
from barbell_search.graphs import make_graph  # pylint: disable=import-error


def test_make_graph(outputs_folder: Path) -> None:
    target = outputs_folder / "barbell.gv"
    graph = make_graph(target, validate_params(10, 2.5, None, WalkKind.ADJACENCY))

    text = target.read_text(encoding="utf-8")
    assert text == graph.source
    assert text.startswith("graph barbell {")
    assert "cluster_0" in text
    assert "cluster_1" in text
    assert text.count("doublecircle") == 1
    assert text.count(" -- ") == 21
    assert 'label="w=2.5"' in text
    assert "dotted" in text


def test_make_graph_marked_vertex(outputs_folder: Path) -> None:
    target = outputs_folder / "barbell.gv"
    graph = make_graph(target, validate_params(10, 1.0, None, WalkKind.ADJACENCY), 3)
    marked = [line for line in graph.body if line.lstrip().startswith("3 [")]
    assert len(marked) == 1
    assert "doublecircle" in marked[0]
    assert "label=a" in marked[0]
