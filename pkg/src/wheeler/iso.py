"""Label-preserving isomorphism of labeled digraphs, and the reduction to
plain undirected isomorphism via per-edge gadgets.

The gadget for a directed edge (u, v, k) is a spine u - a - b - v with a
pendant path of length k hung on a and a pendant path of length sigma + 2
hung on b.  Pendant lengths separate label tips from direction tips in the
distance profile, so undirected isomorphism of the transformed graphs
coincides with label-preserving isomorphism of the originals.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Iterable

from .graph import LabeledDigraph


class UndirectedGraph:
    """Immutable simple undirected graph on vertices 1..n."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in adj)

    @property
    def e(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])


def distance_profile(graph: UndirectedGraph, v: int) -> tuple[int, ...]:
    """a_i = number of vertices at shortest-path distance exactly i, i = 1..n."""
    dist = [-1] * (graph.n + 1)
    dist[v] = 0
    queue = deque([v])
    profile = [0] * graph.n
    while queue:
        cur = queue.popleft()
        for nxt in graph.adj[cur]:
            if dist[nxt] < 0:
                dist[nxt] = dist[cur] + 1
                profile[dist[nxt] - 1] += 1
                queue.append(nxt)
    return tuple(profile)


def undirected_iso(g1: UndirectedGraph, g2: UndirectedGraph) -> bool:
    """Backtracking isomorphism test with degree and distance-profile pruning."""
    if g1.n != g2.n or g1.e != g2.e:
        return False
    prof1 = {v: (g1.degree(v), distance_profile(g1, v)) for v in range(1, g1.n + 1)}
    prof2 = {v: (g2.degree(v), distance_profile(g2, v)) for v in range(1, g2.n + 1)}
    if Counter(prof1.values()) != Counter(prof2.values()):
        return False

    by_sig: dict = {}
    for v, sig in prof2.items():
        by_sig.setdefault(sig, []).append(v)
    order = sorted(prof1, key=lambda v: (len(by_sig[prof1[v]]), v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in by_sig[prof1[v]]:
            if w in used:
                continue
            ok = True
            for u, x in mapping.items():
                if (u in g1.adj[v]) != (x in g2.adj[w]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if rec(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return rec(0)


def labeled_iso(g1: LabeledDigraph, g2: LabeledDigraph) -> dict[int, int] | None:
    """A bijection preserving every edge (u, v, k) with multiplicity, or None."""
    if g1.n != g2.n or g1.e != g2.e or g1.sigma != g2.sigma:
        return None
    if Counter(e.label for e in g1.edges) != Counter(e.label for e in g2.edges):
        return None

    def adjacency(g: LabeledDigraph):
        out: dict[int, dict[int, tuple]] = {v: {} for v in g.vertices()}
        inc: dict[int, dict[int, tuple]] = {v: {} for v in g.vertices()}
        for v in g.vertices():
            by_head: dict[int, list[int]] = {}
            for e in g.out_edges(v):
                by_head.setdefault(e.head, []).append(e.label)
            for h, labs in by_head.items():
                out[v][h] = tuple(sorted(labs))
                inc[h][v] = tuple(sorted(labs))
        return out, inc

    out1, in1 = adjacency(g1)
    out2, in2 = adjacency(g2)
    und1 = UndirectedGraph(g1.n, ((e.tail, e.head) for e in g1.edges))
    und2 = UndirectedGraph(g2.n, ((e.tail, e.head) for e in g2.edges))

    def signature(g, out, inc, und, v):
        outs = Counter(e.label for e in g.out_edges(v))
        ins = Counter(e.label for e in g.in_edges(v))
        loop = out[v].get(v, ())
        return (tuple(sorted(outs.items())), tuple(sorted(ins.items())),
                loop, distance_profile(und, v))

    sig1 = {v: signature(g1, out1, in1, und1, v) for v in g1.vertices()}
    sig2 = {v: signature(g2, out2, in2, und2, v) for v in g2.vertices()}
    if Counter(sig1.values()) != Counter(sig2.values()):
        return None
    by_sig: dict = {}
    for v, sig in sig2.items():
        by_sig.setdefault(sig, []).append(v)

    order = sorted(sig1, key=lambda v: (len(by_sig[sig1[v]]), v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def feasible(v: int, w: int) -> bool:
        for u, x in mapping.items():
            if out1[v].get(u, ()) != out2[w].get(x, ()):
                return False
            if in1[v].get(u, ()) != in2[w].get(x, ()):
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in sorted(by_sig[sig1[v]]):
            if w not in used and feasible(v, w):
                mapping[v] = w
                used.add(w)
                if rec(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if rec(0) else None


def alpha(graph: LabeledDigraph) -> UndirectedGraph:
    """Replace each directed labeled edge by its undirected gadget.

    Each edge contributes 2 spine vertices, a label pendant of k vertices and
    a direction pendant of sigma + 2 vertices; originals keep their ids.
    """
    edges: list[tuple[int, int]] = []
    nxt = graph.n

    def fresh() -> int:
        nonlocal nxt
        nxt += 1
        return nxt

    def pendant(base: int, length: int) -> None:
        prev = base
        for _ in range(length):
            node = fresh()
            edges.append((prev, node))
            prev = node

    for e in graph.edges:
        a, b = fresh(), fresh()
        edges.append((e.tail, a))
        edges.append((a, b))
        edges.append((b, e.head))
        pendant(a, e.label)
        pendant(b, graph.sigma + 2)
    return UndirectedGraph(nxt, edges)
