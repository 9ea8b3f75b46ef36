"""Edge-labeled directed multigraphs, vertex orderings, and their text formats.

Vertices are the dense integers 1..n and edge labels are integers 1..sigma.
Parallel edges (including exact duplicates) and self-loops are permitted;
a self-loop counts toward both the in-degree and the out-degree of its vertex.
All objects are immutable after construction, so they are safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphFormatError(ValueError):
    """Malformed graph or ordering text; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, order=True)
class Edge:
    """Directed edge from `tail` to `head` carrying `label`."""

    tail: int
    head: int
    label: int


class LabeledDigraph:
    """Immutable directed multigraph with integer edge labels."""

    __slots__ = ("n", "sigma", "edges", "_out", "_in")

    def __init__(self, n: int, sigma: int, edges: Iterable[Edge]):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        if sigma < 1:
            raise ValueError(f"alphabet size must be at least 1, got {sigma}")
        edges = tuple(edges)
        out: list[list[Edge]] = [[] for _ in range(n + 1)]
        inc: list[list[Edge]] = [[] for _ in range(n + 1)]
        for e in edges:
            if not (1 <= e.tail <= n):
                raise ValueError(f"edge tail {e.tail} out of range 1..{n}")
            if not (1 <= e.head <= n):
                raise ValueError(f"edge head {e.head} out of range 1..{n}")
            if not (1 <= e.label <= sigma):
                raise ValueError(f"edge label {e.label} out of range 1..{sigma}")
            out[e.tail].append(e)
            inc[e.head].append(e)
        self.n = n
        self.sigma = sigma
        self.edges = edges
        self._out = tuple(tuple(es) for es in out)
        self._in = tuple(tuple(es) for es in inc)

    @property
    def e(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def out_edges(self, v: int) -> tuple[Edge, ...]:
        return self._out[v]

    def in_edges(self, v: int) -> tuple[Edge, ...]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def delete_edges(self, indices: Iterable[int]) -> "LabeledDigraph":
        """Graph with the edges at the given positions of `self.edges` removed."""
        drop = set(indices)
        kept = tuple(e for i, e in enumerate(self.edges) if i not in drop)
        return LabeledDigraph(self.n, self.sigma, kept)

    def edge_multiset(self) -> dict[Edge, int]:
        counts: dict[Edge, int] = {}
        for e in self.edges:
            counts[e] = counts.get(e, 0) + 1
        return counts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return (self.n == other.n and self.sigma == other.sigma
                and sorted(self.edges) == sorted(other.edges))

    def __hash__(self) -> int:
        return hash((self.n, self.sigma, tuple(sorted(self.edges))))

    def __repr__(self) -> str:
        return f"LabeledDigraph(n={self.n}, sigma={self.sigma}, e={self.e})"


class Ordering:
    """A bijection between vertices 1..n and ranks 1..n.

    `order[i]` is the vertex placed at rank i+1; `rank(v)` is 1-based.
    """

    __slots__ = ("order", "_rank")

    def __init__(self, order: Sequence[int]):
        order = tuple(order)
        n = len(order)
        rank = [0] * (n + 1)
        for pos, v in enumerate(order, start=1):
            if not (1 <= v <= n):
                raise ValueError(f"vertex {v} out of range 1..{n}")
            if rank[v]:
                raise ValueError(f"vertex {v} appears twice; not a permutation")
            rank[v] = pos
        self.order = order
        self._rank = tuple(rank)

    @property
    def n(self) -> int:
        return len(self.order)

    def rank(self, v: int) -> int:
        return self._rank[v]

    def vertex_at(self, pos: int) -> int:
        return self.order[pos - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ordering):
            return NotImplemented
        return self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"Ordering({list(self.order)})"


def _data_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def parse_graph(text: str) -> LabeledDigraph:
    """Parse the graph file format.

    Line 1 is ``wg <n> <e> <sigma>``; each of the following e lines is
    ``<tail> <head> <label>`` with 1-based integers.  Lines starting with
    ``#`` and blank lines are ignored.
    """
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphFormatError("empty graph file") from None
    parts = header.split()
    if len(parts) != 4 or parts[0] != "wg":
        raise GraphFormatError("expected header 'wg <n> <e> <sigma>'", lineno)
    try:
        n, e, sigma = int(parts[1]), int(parts[2]), int(parts[3])
    except ValueError:
        raise GraphFormatError("non-integer field in header", lineno) from None
    if n < 0 or e < 0 or sigma < 1:
        raise GraphFormatError("header values out of range", lineno)
    edges = []
    for lineno, line in lines:
        if len(edges) == e:
            raise GraphFormatError(f"more than {e} edge lines", lineno)
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError("expected '<tail> <head> <label>'", lineno)
        try:
            tail, head, label = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphFormatError("non-integer field in edge line", lineno) from None
        if not (1 <= tail <= n):
            raise GraphFormatError(f"tail {tail} out of range 1..{n}", lineno)
        if not (1 <= head <= n):
            raise GraphFormatError(f"head {head} out of range 1..{n}", lineno)
        if not (1 <= label <= sigma):
            raise GraphFormatError(f"label {label} exceeds sigma={sigma}", lineno)
        edges.append(Edge(tail, head, label))
    if len(edges) != e:
        raise GraphFormatError(f"expected {e} edges, found {len(edges)}")
    return LabeledDigraph(n, sigma, edges)


def serialize_graph(graph: LabeledDigraph) -> str:
    """Inverse of parse_graph, up to edge order."""
    out = [f"wg {graph.n} {graph.e} {graph.sigma}"]
    out.extend(f"{e.tail} {e.head} {e.label}" for e in graph.edges)
    return "\n".join(out) + "\n"


def parse_ordering(text: str, n: int | None = None) -> Ordering:
    """Parse an ordering file: one line of vertex ids, rank order left to right."""
    ids: list[int] = []
    for lineno, line in _data_lines(text):
        for tok in line.split():
            try:
                ids.append(int(tok))
            except ValueError:
                raise GraphFormatError(f"non-integer vertex id {tok!r}", lineno) from None
    if n is not None and len(ids) != n:
        raise GraphFormatError(f"expected {n} vertex ids, found {len(ids)}")
    try:
        return Ordering(ids)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def serialize_ordering(pi: Ordering) -> str:
    return " ".join(str(v) for v in pi.order) + "\n"


def sources(graph: LabeledDigraph) -> set[int]:
    """Vertices with in-degree zero.  A self-loop at v keeps v out of this set."""
    return {v for v in graph.vertices() if graph.in_degree(v) == 0}


def label_subgraph(graph: LabeledDigraph, k: int) -> LabeledDigraph:
    """The subgraph on the same vertices keeping exactly the label-k edges."""
    if not (1 <= k <= graph.sigma):
        raise ValueError(f"label {k} out of range 1..{graph.sigma}")
    return LabeledDigraph(graph.n, graph.sigma,
                          (e for e in graph.edges if e.label == k))


def nondeterminism(graph: LabeledDigraph) -> int:
    """Largest number of equally-labeled edges leaving one vertex (0 if edgeless)."""
    best = 0
    for v in graph.vertices():
        counts: dict[int, int] = {}
        for e in graph.out_edges(v):
            counts[e.label] = counts.get(e.label, 0) + 1
        if counts:
            best = max(best, max(counts.values()))
    return best


def inlabel_consistent(graph: LabeledDigraph) -> bool:
    """True iff every vertex's inbound edges all carry one label.

    This is an ordering-independent necessary condition for admitting a proper
    ordering: two inbound labels at one vertex would force the vertex to
    precede itself.
    """
    for v in graph.vertices():
        labels = {e.label for e in graph.in_edges(v)}
        if len(labels) > 1:
            return False
    return True


def in_label(graph: LabeledDigraph, v: int) -> int | None:
    """The unique inbound label of v, or None for sources.

    Raises ValueError when v has mixed inbound labels.
    """
    labels = {e.label for e in graph.in_edges(v)}
    if not labels:
        return None
    if len(labels) > 1:
        raise ValueError(f"vertex {v} has mixed inbound labels {sorted(labels)}")
    return labels.pop()
