"""Edge-colored graphs and the bridge between PDAs and strong edge colorings.

A strong edge coloring assigns colors so that two edges sharing a color are
never adjacent nor joined by a third edge (their distance is at least 2).  An
F x K array is a valid PDA exactly when its colored bipartite graph is
strongly colored and the column-side vertices all have the same degree, which
makes the checker here a second, independent oracle for the grid validator.

Also houses the cycle machinery used by the strong-like product: cycles with
proper vertex colorings, 3-color strong edge colorings, and pairs of opposing
orientations carrying disjoint color sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

from .core import Entry, PdaArray, ValidationReport, Violation

Label = Hashable


class GraphError(ValueError):
    """Structural problem with a graph, coloring, or orientation."""


class NonConstantDegreeError(GraphError):
    """Column-side degrees differ, so the coloring has no PDA form."""

    def __init__(self, v1: Label, d1: int, v2: Label, d2: int):
        super().__init__(
            f"column vertices must have constant degree: {v1!r} has degree {d1}, {v2!r} has degree {d2}"
        )
        self.witness = ((v1, d1), (v2, d2))


class NotStrongError(GraphError):
    """The edge coloring fails the strength condition."""

    def __init__(self, report: ValidationReport):
        super().__init__(f"not a strong edge coloring:\n{report}")
        self.report = report


@dataclass(frozen=True)
class ColoredBipartiteGraph:
    """Triple system over an ordered row side and column side.

    ``triples`` holds (row-vertex, column-vertex, color).  At most one triple
    per vertex pair; every color is declared by appearing in a triple.  The
    side lists fix row/column order when converting to a PDA.
    """

    left: tuple[Label, ...]
    right: tuple[Label, ...]
    triples: frozenset[tuple[Label, Label, Label]]

    def __post_init__(self):
        if len(set(self.left)) != len(self.left) or len(set(self.right)) != len(self.right):
            raise GraphError("duplicate vertex label within a side")
        lset, rset = set(self.left), set(self.right)
        seen_pairs: set[tuple[Label, Label]] = set()
        for l, r, _ in self.triples:
            if l not in lset or r not in rset:
                raise GraphError(f"triple endpoint ({l!r}, {r!r}) not among declared vertices")
            if (l, r) in seen_pairs:
                raise GraphError(f"pair ({l!r}, {r!r}) carries more than one color")
            seen_pairs.add((l, r))

    @property
    def colors(self) -> frozenset[Label]:
        return frozenset(s for _, _, s in self.triples)

    def color_of(self) -> dict[tuple[Label, Label], Label]:
        return {(l, r): s for l, r, s in self.triples}

    def right_degrees(self) -> dict[Label, int]:
        deg = {r: 0 for r in self.right}
        for _, r, _ in self.triples:
            deg[r] += 1
        return deg


@dataclass(frozen=True)
class Graph:
    """Plain undirected graph; edges are 2-element frozensets."""

    vertices: tuple[Label, ...]
    edges: frozenset[frozenset[Label]]

    def __post_init__(self):
        vset = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"edge {set(e)!r} is not a 2-set (self-loops are not allowed)")
            if not e <= vset:
                raise GraphError(f"edge {set(e)!r} uses undeclared vertices")


@dataclass(frozen=True)
class ColoredGraph:
    """General edge-colored graph: ({u, v}, color) pairs over declared vertices."""

    vertices: tuple[Label, ...]
    colored_edges: frozenset[tuple[frozenset[Label], Label]]

    def __post_init__(self):
        vset = set(self.vertices)
        seen: set[frozenset[Label]] = set()
        for e, _ in self.colored_edges:
            if len(e) != 2:
                raise GraphError(f"edge {set(e)!r} is not a 2-set (self-loops are not allowed)")
            if not e <= vset:
                raise GraphError(f"edge {set(e)!r} uses undeclared vertices")
            if e in seen:
                raise GraphError(f"edge {set(e)!r} carries more than one color")
            seen.add(e)

    @property
    def colors(self) -> frozenset[Label]:
        return frozenset(s for _, s in self.colored_edges)

    def support(self) -> Graph:
        return Graph(self.vertices, frozenset(e for e, _ in self.colored_edges))


@dataclass(frozen=True)
class VertexColoring:
    """Assignment vertex -> color; proper when adjacent vertices differ."""

    assignments: tuple[tuple[Label, Label], ...]

    def color(self, v: Label) -> Label:
        for u, s in self.assignments:
            if u == v:
                return s
        raise KeyError(v)

    def as_dict(self) -> dict[Label, Label]:
        return dict(self.assignments)

    def check_on(self, graph: Graph) -> None:
        mapping = self.as_dict()
        missing = [v for v in graph.vertices if v not in mapping]
        if missing:
            raise GraphError(f"vertex coloring not total: {missing[0]!r} unassigned")
        for e in graph.edges:
            u, v = tuple(e)
            if mapping[u] == mapping[v]:
                raise GraphError(f"adjacent vertices {u!r}, {v!r} share color {mapping[u]!r}")


@dataclass(frozen=True)
class Orientation:
    """One direction per colored edge: (<x, y>, color) pairs."""

    directed: frozenset[tuple[tuple[Label, Label], Label]]

    @property
    def colors(self) -> frozenset[Label]:
        return frozenset(s for _, s in self.directed)

    def support(self) -> frozenset[frozenset[Label]]:
        return frozenset(frozenset(pair) for pair, _ in self.directed)

    def reversed_support(self) -> frozenset[tuple[Label, Label]]:
        return frozenset((y, x) for (x, y), _ in self.directed)

    def check_on(self, coloring: ColoredGraph) -> None:
        host = {e for e, _ in coloring.colored_edges}
        chosen: set[frozenset[Label]] = set()
        for (x, y), _ in self.directed:
            e = frozenset((x, y))
            if e not in host:
                raise GraphError(f"directed edge {(x, y)!r} not in the host coloring")
            if e in chosen:
                raise GraphError(f"both directions of {set(e)!r} present")
            chosen.add(e)
        if chosen != host:
            missing = next(iter(host - chosen))
            raise GraphError(f"edge {set(missing)!r} left unoriented")


def _strong_violations_bipartite(g: ColoredBipartiteGraph) -> list[Violation]:
    by_color: dict[Label, list[tuple[Label, Label]]] = {}
    for l, r, s in g.triples:
        by_color.setdefault(s, []).append((l, r))
    edge_set = {(l, r) for l, r, _ in g.triples}
    violations: list[Violation] = []
    for s, edges in by_color.items():
        edges.sort(key=repr)
        for i in range(len(edges)):
            l1, r1 = edges[i]
            for j in range(i + 1, len(edges)):
                l2, r2 = edges[j]
                if l1 == l2 or r1 == r2:
                    violations.append(
                        Violation(
                            "shared-vertex",
                            ((l1, r1, s), (l2, r2, s)),
                            f"same-colored edges meet at {(l1 if l1 == l2 else r1)!r}",
                        )
                    )
                elif (l1, r2) in edge_set or (l2, r1) in edge_set:
                    link = (l1, r2) if (l1, r2) in edge_set else (l2, r1)
                    violations.append(
                        Violation(
                            "linked-edges",
                            ((l1, r1, s), (l2, r2, s)),
                            f"edge {link!r} joins two edges of color {s!r}",
                        )
                    )
    return violations


def _strong_violations_general(g: ColoredGraph) -> list[Violation]:
    by_color: dict[Label, list[frozenset[Label]]] = {}
    for e, s in g.colored_edges:
        by_color.setdefault(s, []).append(e)
    edge_set = {e for e, _ in g.colored_edges}
    violations: list[Violation] = []
    for s, edges in by_color.items():
        edges.sort(key=repr)
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                e1, e2 = edges[i], edges[j]
                if e1 & e2:
                    violations.append(
                        Violation(
                            "shared-vertex",
                            ((tuple(e1), s), (tuple(e2), s)),
                            f"same-colored edges meet at {next(iter(e1 & e2))!r}",
                        )
                    )
                    continue
                link = next(
                    (frozenset((x, y)) for x in e1 for y in e2 if frozenset((x, y)) in edge_set),
                    None,
                )
                if link is not None:
                    violations.append(
                        Violation(
                            "linked-edges",
                            ((tuple(e1), s), (tuple(e2), s)),
                            f"edge {tuple(link)!r} joins two edges of color {s!r}",
                        )
                    )
    return violations


def is_strong_coloring(g: ColoredBipartiteGraph | ColoredGraph) -> ValidationReport:
    """Brute-force strength check over all pairs of same-colored edges.

    Two edges of one color violate strength when they share a vertex or when
    some edge of the graph connects an endpoint of one to an endpoint of the
    other.
    """
    if isinstance(g, ColoredBipartiteGraph):
        return ValidationReport(tuple(_strong_violations_bipartite(g)))
    return ValidationReport(tuple(_strong_violations_general(g)))


def pda_to_coloring(p: PdaArray) -> ColoredBipartiteGraph:
    """View an array as a colored bipartite graph: rows 1..F, columns 1'..K'."""
    left = tuple(range(1, p.F + 1))
    right = tuple(f"{k}'" for k in range(1, p.K + 1))
    triples = frozenset(
        (j + 1, right[k], e)
        for j, row in enumerate(p.grid)
        for k, e in enumerate(row)
        if e is not None
    )
    return ColoredBipartiteGraph(left, right, triples)


def coloring_to_pda(g: ColoredBipartiteGraph) -> PdaArray:
    """Convert a strong coloring with constant column degree into an array.

    Structured color labels are densified to integers 1..S in
    first-appearance row-major order, with the original labels kept on the
    result's ``legend``; colors that already are the integers 1..S pass
    through unchanged, so converting an array's own coloring back is the
    identity.  Rejects non-constant column degrees and non-strong colorings,
    naming the witness.
    """
    degrees = g.right_degrees()
    if degrees:
        items = sorted(degrees.items(), key=lambda kv: repr(kv[0]))
        base_v, base_d = items[0]
        for v, d in items[1:]:
            if d != base_d:
                raise NonConstantDegreeError(base_v, base_d, v, d)
    report = is_strong_coloring(g)
    if not report.is_valid:
        raise NotStrongError(report)

    colors = g.colors
    already_dense = colors == frozenset(range(1, len(colors) + 1))

    color_at = g.color_of()
    relabel: dict[Label, int] = {}
    grid: list[tuple[Entry, ...]] = []
    for l in g.left:
        row: list[Entry] = []
        for r in g.right:
            s = color_at.get((l, r))
            if s is None:
                row.append(None)
            elif already_dense:
                row.append(s)
            else:
                if s not in relabel:
                    relabel[s] = len(relabel) + 1
                row.append(relabel[s])
        grid.append(tuple(row))
    legend = None if already_dense else {dense: original for original, dense in relabel.items()}
    return PdaArray(tuple(grid), legend=legend)


def as_general_graph(g: ColoredBipartiteGraph) -> ColoredGraph:
    """Forget sides, tagging vertices so the two sides cannot collide."""
    vertices = tuple(("row", l) for l in g.left) + tuple(("col", r) for r in g.right)
    edges = frozenset(
        (frozenset({("row", l), ("col", r)}), s) for l, r, s in g.triples
    )
    return ColoredGraph(vertices, edges)


def split_bipartite(g: ColoredGraph, left_vertices: Iterable[Label]) -> ColoredBipartiteGraph:
    """Rebuild sides from a general colored graph given one side's vertices.

    Every edge must cross the split.  Vertex order follows the input graph's
    vertex list within each side.
    """
    lset = set(left_vertices)
    left = tuple(v for v in g.vertices if v in lset)
    right = tuple(v for v in g.vertices if v not in lset)
    triples = []
    for e, s in g.colored_edges:
        u, v = tuple(e)
        if u in lset and v not in lset:
            triples.append((u, v, s))
        elif v in lset and u not in lset:
            triples.append((v, u, s))
        else:
            raise GraphError(f"edge {set(e)!r} does not cross the requested split")
    return ColoredBipartiteGraph(left, right, frozenset(triples))


def two_coloring(g: ColoredGraph) -> Optional[dict[Label, int]]:
    """BFS bipartition of the support; None when an odd cycle exists."""
    adjacency: dict[Label, set[Label]] = {v: set() for v in g.vertices}
    for e, _ in g.colored_edges:
        u, v = tuple(e)
        adjacency[u].add(v)
        adjacency[v].add(u)
    side: dict[Label, int] = {}
    for start in g.vertices:
        if start in side:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for w in adjacency[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def cycle(m: int) -> Graph:
    """The cycle on vertices 1..m in traversal order."""
    if m < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    vertices = tuple(range(1, m + 1))
    edges = frozenset(
        frozenset({vertices[i], vertices[(i + 1) % m]}) for i in range(m)
    )
    return Graph(vertices, edges)


def cycle_vertex_coloring(m: int) -> VertexColoring:
    """Parity 2-coloring for even m; the 3-coloring {a, b, c} for m = 3."""
    if m == 3:
        return VertexColoring(((1, "a"), (2, "b"), (3, "c")))
    if m >= 4 and m % 2 == 0:
        return VertexColoring(tuple((v, "a" if v % 2 == 1 else "b") for v in range(1, m + 1)))
    raise GraphError(f"no vertex coloring rule for m={m}: need m=3 or m even")


def cycle_strong_coloring(m: int) -> ColoredGraph:
    """Color edge {i, i+1} with ((i-1) mod 3) + 1; strong when 3 divides m."""
    if m < 3 or m % 3 != 0:
        raise GraphError(f"3-color strong edge coloring of a cycle needs 3 | m, got m={m}")
    vertices = tuple(range(1, m + 1))
    edges = frozenset(
        (frozenset({vertices[i], vertices[(i + 1) % m]}), (i % 3) + 1) for i in range(m)
    )
    return ColoredGraph(vertices, edges)


def primed(color: Label) -> str:
    """Fresh color label for the opposing orientation, e.g. 2 -> \"2'\"."""
    return f"{color}'"


def opposing_orientations(c: ColoredGraph) -> tuple[Orientation, Orientation]:
    """Clockwise and counterclockwise traversals of a colored cycle.

    The input must be a cycle whose traversal order matches the vertex list.
    The forward direction <v_i, v_i+1> takes the color of the successor edge
    (a rotation of the base coloring, itself strong); the opposing orientation
    reverses every edge and primes the color, giving disjoint color sets.
    """
    m = len(c.vertices)
    order = list(c.vertices)
    ring = [frozenset({order[i], order[(i + 1) % m]}) for i in range(m)]
    host = {e for e, _ in c.colored_edges}
    if m < 3 or set(ring) != host or len(host) != m:
        raise GraphError("opposing orientations are defined here for cycles in vertex order")
    color_of = {e: s for e, s in c.colored_edges}
    forward = []
    backward = []
    for i in range(m):
        x, y = order[i], order[(i + 1) % m]
        s = color_of[ring[(i + 1) % m]]
        forward.append(((x, y), s))
        backward.append(((y, x), primed(s)))
    return Orientation(frozenset(forward)), Orientation(frozenset(backward))
