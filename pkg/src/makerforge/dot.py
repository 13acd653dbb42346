"""Graphviz DOT export: tree skeleton plus one colored chain per hyperedge."""

from __future__ import annotations

from .errors import TooLarge
from .tree_model import TreeHypergraph

_PALETTE = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
    "#a65628", "#f781bf", "#17becf", "#999999", "#66c2a5",
]


def export_dot(h: TreeHypergraph, max_vertices: int = 500) -> str:
    """Render vertices, tree edges, and each hyperedge as a colored path chain.

    A legend comment block maps colors back to edge ids.
    """
    if h.n_vertices > max_vertices:
        raise TooLarge(f"{h.n_vertices} vertices exceed the DOT limit {max_vertices}")
    lines = ["digraph treehg {"]
    lines.append("  // hyperedge legend (color, start -> end, multiplicity):")
    for i, e in enumerate(h.edges):
        color = _PALETTE[i % len(_PALETTE)]
        lines.append(f"  //   edge {i}: {color} {e.start} -> {e.end} x{e.mult}")
    lines.append('  node [shape=circle, fontsize=10];')
    for v in range(h.n_vertices):
        lines.append(f'  v{v} [label="{v}"];')
    for v in range(h.n_vertices):
        for c in h.children[v]:
            lines.append(f"  v{v} -> v{c};")
    for i in range(len(h.edges)):
        color = _PALETTE[i % len(_PALETTE)]
        path = h.path_vertices(i)
        if len(path) == 1:
            lines.append(f'  v{path[0]} [color="{color}"];')
            continue
        for a, b in zip(path, path[1:]):
            lines.append(f'  v{a} -> v{b} [color="{color}", penwidth=2, arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
