"""Canonical labelling for small graphs by degree refinement and
individualisation.

Meant for deduplicating a handful of graphs on at most a few dozen
vertices; the branching is exponential in the size of symmetric cells.
"""

from __future__ import annotations

from .graph import Graph, graph6_encode


def _refine(g: Graph, colors: list[int]) -> list[int]:
    """Iterate colour refinement to a stable, isomorphism-invariant colouring."""
    n = g.n
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in range(n) if g.rows[v] >> w & 1)))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _relabel(g: Graph, order: list[int]) -> Graph:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    rows = [0] * g.n
    for v in range(g.n):
        r = 0
        row = g.rows[v]
        for w in range(g.n):
            if row >> w & 1:
                r |= 1 << pos[w]
        rows[pos[v]] = r
    return Graph(g.n, rows, check=False)


def canonical_form(g: Graph) -> Graph:
    """Relabelled copy of ``g`` that is identical for isomorphic inputs."""
    best: list[bytes | Graph | None] = [None, None]

    def search(colors: list[int]) -> None:
        colors = _refine(g, colors)
        k = len(set(colors))
        if k == g.n:
            order = sorted(range(g.n), key=lambda v: colors[v])
            h = _relabel(g, order)
            code = graph6_encode(h)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, h
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        cell = min(c for c, s in sizes.items() if s > 1)
        for v in range(g.n):
            if colors[v] == cell:
                # individualised vertex gets a colour just below its cell
                search([2 * c + (0 if w == v else 1) if c == cell else 2 * c + 1 for w, c in enumerate(colors)])

    if g.n == 0:
        return g
    search([0] * g.n)
    return best[1]


def canonical_graph6(g: Graph) -> str:
    return graph6_encode(canonical_form(g)).decode("ascii")


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.edge_count() == h.edge_count() and canonical_form(g) == canonical_form(h)
