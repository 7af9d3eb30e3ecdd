#!/usr/bin/env python3

import sys
from pathlib import Path
from typing import Final

from graphviz import Graph

from .barbell import BarbellParams, make_barbell_graph, TYPE_LABELS, vertex_types
from .log import logger

TYPE_COLORS: Final = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd")


def make_graph(filepath: Path, params: BarbellParams, marked_index: int = 0) -> Graph:
    """DOT rendering of a barbell instance, vertices coloured by type"""
    sys.stderr.write(f"Write graph data to {filepath}\n")

    barbell = make_barbell_graph(params)
    types = vertex_types(params, marked_index)

    g = Graph("barbell", filename=str(filepath))
    g.attr(label=str(params))
    for clique, vertices in enumerate(
        (range(params.half), range(params.half, params.n_vertices))
    ):
        with g.subgraph(name=f"cluster_{clique}") as gs:
            gs.attr(style="invis")
            for vertex in vertices:
                type_index = int(types[vertex])
                gs.node(
                    str(vertex),
                    label=TYPE_LABELS[type_index],
                    shape="doublecircle" if vertex == marked_index else "circle",
                    style="filled",
                    fillcolor=TYPE_COLORS[type_index],
                )

    for u, v, weight in sorted(barbell.edges(data="weight")):
        if (u < params.half) != (v < params.half):
            g.edge(str(u), str(v), label=f"w={weight:g}", style="dotted", penwidth="2")
        else:
            g.edge(str(u), str(v))

    logger.debug("Barbell graph has %d edges", barbell.number_of_edges())
    g.save()
    return g
