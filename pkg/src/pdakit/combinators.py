"""Composition operators on strong edge colorings.

Every operator checks its inputs with the brute-force strength oracle, builds
the composite triple system, and returns a colored graph whose colors are
structured tuples recording exactly which input colors and vertices
contributed.  Converting to an array (graphs.coloring_to_pda) densifies those
tuples to integers and keeps the mapping on the array's legend.

Outputs are not guaranteed to have constant column degree; conversion to an
array is the caller's step and may legitimately fail for the same-colors
combination without the nested-pair restriction (families module).
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Sequence

from .core import PdaArray
from .graphs import (
    ColoredBipartiteGraph,
    ColoredGraph,
    Label,
    NotStrongError,
    cycle_strong_coloring,
    cycle_vertex_coloring,
    is_strong_coloring,
    opposing_orientations,
    two_coloring,
)

# Dense color index -> the contributing tuple it stands for; total and
# invertible by construction (see graphs.coloring_to_pda).
CombineLegend = dict[int, object]


class CombineError(ValueError):
    """Inputs rejected by a composition operator."""


def _require_strong(g: ColoredBipartiteGraph | ColoredGraph) -> None:
    report = is_strong_coloring(g)
    if not report.is_valid:
        raise NotStrongError(report)


def combine_same_colors(
    g1: ColoredBipartiteGraph, g2: ColoredBipartiteGraph
) -> ColoredBipartiteGraph:
    """Combine two strong colorings that share one color set.

    The result has rows g1.right and columns {(x, u) in g1.left x g2.left
    sharing some color}; the edge from y to (x, u) exists when (x, y, s) and
    (u, v, s) are edges for a common color s, and is colored (s, v).
    """
    _require_strong(g1)
    _require_strong(g2)
    if g1.colors != g2.colors:
        raise CombineError(
            f"color sets differ: {sorted(map(repr, g1.colors))} vs {sorted(map(repr, g2.colors))}"
        )
    by_color1: dict[Label, list[tuple[Label, Label]]] = {}
    for x, y, s in g1.triples:
        by_color1.setdefault(s, []).append((x, y))
    by_color2: dict[Label, list[tuple[Label, Label]]] = {}
    for u, v, s in g2.triples:
        by_color2.setdefault(s, []).append((u, v))

    pairs: set[tuple[Label, Label]] = set()
    triples: set[tuple[Label, Label, Label]] = set()
    for s, edges1 in by_color1.items():
        for (x, y), (u, v) in iproduct(edges1, by_color2.get(s, ())):
            pairs.add((x, u))
            triples.add((y, (x, u), (s, v)))

    idx1 = {x: i for i, x in enumerate(g1.left)}
    idx2 = {u: i for i, u in enumerate(g2.left)}
    right = tuple(sorted(pairs, key=lambda p: (idx1[p[0]], idx2[p[1]])))
    return ColoredBipartiteGraph(g1.right, right, frozenset(triples))


def combine_same_colors_fold(gs: Sequence[ColoredBipartiteGraph]) -> ColoredBipartiteGraph:
    """Left-fold of the same-colors combination over three or more graphs.

    Each step requires the accumulated color set to equal the next factor's,
    so later factors must be colored with the pair colors produced upstream.
    No closed-form parameters are claimed for the folded result.
    """
    if len(gs) < 2:
        raise CombineError("need at least two graphs to combine")
    acc = gs[0]
    for g in gs[1:]:
        acc = combine_same_colors(acc, g)
    return acc


def same_colors_claimed_params(p1: PdaArray, p2: PdaArray) -> tuple[int, int, int, int]:
    """(K, F, Z, S) as published for the same-colors combination of two arrays.

    The published summary's index sets mix row and column roles and its S
    over-counts, so these numbers routinely disagree with the constructed
    array; they are reported alongside measured values, never substituted for
    them.
    """
    colors1_by_row = [set(e for e in row if e is not None) for row in p1.grid]
    colors2_by_row = [set(e for e in row if e is not None) for row in p2.grid]
    k_claim = sum(
        1
        for c1 in colors1_by_row
        for c2 in colors2_by_row
        if c1 & c2
    )
    f_claim = p1.K
    colors2_all = set().union(*colors2_by_row) if colors2_by_row else set()
    sharing_cols = sum(
        1
        for k in range(p1.K)
        if any(p1.grid[j][k] is not None and p1.grid[j][k] in colors2_all for j in range(p1.F))
    )
    z_claim = p1.K - sharing_cols
    s_claim = p2.S * p2.K
    return (k_claim, f_claim, z_claim, s_claim)


def star_product(gs: Sequence[ColoredBipartiteGraph]) -> ColoredBipartiteGraph:
    """Coordinatewise product: edge iff edge in every factor, colors tupled.

    Parameters multiply: K, F, and S are products, and F - Z is the product of
    the factors' integer-per-column counts.
    """
    if len(gs) < 2:
        raise CombineError("need at least two factors")
    for g in gs:
        _require_strong(g)
    left = tuple(iproduct(*(g.left for g in gs)))
    right = tuple(iproduct(*(g.right for g in gs)))
    triples = frozenset(
        (
            tuple(tr[0] for tr in combo),
            tuple(tr[1] for tr in combo),
            tuple(tr[2] for tr in combo),
        )
        for combo in iproduct(*(tuple(g.triples) for g in gs))
    )
    return ColoredBipartiteGraph(left, right, triples)


def tensor_product(c1: ColoredGraph, c2: ColoredGraph) -> ColoredGraph:
    """Tensor product with tuple colors; needs at least one bipartite factor."""
    _require_strong(c1)
    _require_strong(c2)
    if two_coloring(c1) is None and two_coloring(c2) is None:
        raise CombineError("tensor product requires at least one bipartite factor")
    vertices = tuple((u, v) for u in c1.vertices for v in c2.vertices)
    edges: set[tuple[frozenset, tuple]] = set()
    for e1, s1 in c1.colored_edges:
        x1, y1 = tuple(e1)
        for e2, s2 in c2.colored_edges:
            x2, y2 = tuple(e2)
            edges.add((frozenset({(x1, x2), (y1, y2)}), (s1, s2)))
            edges.add((frozenset({(x1, y2), (y1, x2)}), (s1, s2)))
    return ColoredGraph(vertices, frozenset(edges))


def cycle_product(base: ColoredBipartiteGraph, m: int) -> ColoredBipartiteGraph:
    """Strong-like product of an m-cycle with a strong bipartite coloring.

    Rows are (cycle vertex, base row) pairs and columns (cycle vertex,
    base column) pairs; an edge requires a base edge in the second coordinate
    and equality or cycle-adjacency in the first.  Equal cycle vertices color
    the edge with the vertex's color, adjacent ones with the color the
    oriented cycle assigns to the arrow between them; both are paired with the
    base color.  Supported m: 3 (nine color groups) and multiples of 6 (eight,
    since the vertex coloring then needs only two colors).
    """
    if not (m == 3 or (m >= 6 and m % 6 == 0)):
        raise CombineError(f"cycle product supports m = 3 or m divisible by 6, got m={m}")
    _require_strong(base)
    vertex_colors = cycle_vertex_coloring(m).as_dict()
    ecol = cycle_strong_coloring(m)
    forward, backward = opposing_orientations(ecol)
    arrows = {pair: s for pair, s in forward.directed}
    arrows.update({pair: s for pair, s in backward.directed})

    ring = tuple(range(1, m + 1))
    left = tuple((x, y) for x in ring for y in base.left)
    right = tuple((x, v) for x in ring for v in base.right)
    triples: set[tuple[Label, Label, Label]] = set()
    for y, v, s2 in base.triples:
        for x in ring:
            triples.add(((x, y), (x, v), (vertex_colors[x], s2)))
        for (x, u), s in arrows.items():
            triples.add(((x, y), (u, v), (s, s2)))
    return ColoredBipartiteGraph(left, right, frozenset(triples))
