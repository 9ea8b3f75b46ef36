"""Wheeler Graph Violation (minimum edge deletion) and Wheeler Subgraph
(maximum edge retention): exact solvers at desk scale plus the constant-factor
approximation for unilabeled graphs and its per-label decomposition.

Every returned subgraph is certified by check_ordering with an explicit
witness before being handed back.
"""

from __future__ import annotations

import time
from collections import deque
from itertools import combinations
from typing import Iterable

from .axioms import check_ordering
from .graph import Edge, LabeledDigraph, Ordering, label_subgraph, sources
from .recognize import GuardExceeded, search_proper_ordering

DEFAULT_SUBSET_GUARD = 16


def wgv_exact(graph: LabeledDigraph, budget: int | None = None,
              guard: int = DEFAULT_SUBSET_GUARD) -> tuple[Edge, ...] | None:
    """A minimum set of edges whose removal leaves a Wheeler graph.

    Subsets are enumerated in increasing size and canonical order, so the
    first recognized survivor is optimal and ties break deterministically.
    Without a budget the edge count must stay within `guard`; with a budget
    only deletion sets up to that size are tried and None reports that none
    suffices.
    """
    if budget is None and graph.e > guard:
        raise GuardExceeded(f"e={graph.e} exceeds subset enumeration guard {guard}")
    max_size = graph.e if budget is None else min(budget, graph.e)
    for size in range(max_size + 1):
        for combo in combinations(range(graph.e), size):
            if search_proper_ordering(graph.delete_edges(combo)) is not None:
                return tuple(graph.edges[i] for i in combo)
    return None


def ws_exact(graph: LabeledDigraph,
             guard: int = DEFAULT_SUBSET_GUARD) -> tuple[Edge, ...]:
    """A maximum edge subset forming a Wheeler graph: the complement of wgv_exact."""
    removed = wgv_exact(graph, guard=guard)
    drop = list(removed)
    kept = []
    for e in graph.edges:
        if e in drop:
            drop.remove(e)
        else:
            kept.append(e)
    return tuple(kept)


def _require_unilabeled(graph: LabeledDigraph) -> None:
    labels = {e.label for e in graph.edges}
    if len(labels) > 1:
        raise ValueError(f"approximation needs a unilabeled graph, found labels {sorted(labels)}")


def _branching(graph: LabeledDigraph) -> tuple[list[Edge], list[int], dict[int, list[int]]]:
    """Covering branching: BFS from all sources, extra roots only for vertices
    unreachable from any source (lowest id first, greedily minimizing roots).

    Returns (tree edges, roots, children lists in discovery order).
    """
    roots = sorted(sources(graph))
    parent_edge: dict[int, Edge] = {}
    children: dict[int, list[int]] = {v: [] for v in graph.vertices()}
    seen = set(roots)
    queue = deque(roots)

    def bfs():
        while queue:
            v = queue.popleft()
            for e in sorted(graph.out_edges(v), key=lambda e: e.head):
                if e.head not in seen and e.head != v:
                    seen.add(e.head)
                    parent_edge[e.head] = e
                    children[v].append(e.head)
                    queue.append(e.head)

    bfs()
    for v in graph.vertices():
        if v not in seen:
            roots.append(v)
            seen.add(v)
            queue.append(v)
            bfs()
    return list(parent_edge.values()), roots, children


def _leveled_ordering(roots: list[int], children: dict[int, list[int]], n: int) -> Ordering:
    """Planar leveling of a forest: roots first, then each level left to right
    with children grouped under their parent in parent order."""
    seq = list(roots)
    level = list(roots)
    while level:
        nxt = []
        for v in level:
            nxt.extend(children[v])
        seq.extend(nxt)
        level = nxt
    assert len(seq) == n
    return Ordering(seq)


def ws_approx_sigma1(graph: LabeledDigraph) -> tuple[tuple[Edge, ...], Ordering]:
    """Constant-factor Wheeler subgraph for a unilabeled graph.

    With few sources, keep a covering branching laid out by its planar
    leveling; with many sources, keep one outbound edge per source, grouped
    by head so the layout is rainbow-free.  The returned pair always passes
    check_ordering.
    """
    _require_unilabeled(graph)
    v0 = sources(graph)

    if 2 * len(v0) <= graph.n:
        edges, roots, children = _branching(graph)
        pi = _leveled_ordering(roots, children, graph.n)
    else:
        chosen: dict[int, Edge] = {}
        for s in sorted(v0):
            outs = [e for e in graph.out_edges(s)]
            if outs:
                chosen[s] = min(outs, key=lambda e: (e.head, e.label))
        heads = sorted({e.head for e in chosen.values()})
        head_rank = {h: i for i, h in enumerate(heads)}
        tails = sorted(chosen, key=lambda s: (head_rank[chosen[s].head], s))
        silent = sorted(v for v in graph.vertices()
                        if v not in heads and v not in tails)
        pi = Ordering(silent + tails + heads)
        edges = [chosen[s] for s in tails]

    kept = LabeledDigraph(graph.n, graph.sigma, edges)
    assert check_ordering(kept, pi), "approximation produced an improper layout"
    return tuple(edges), pi


def ws_approx(graph: LabeledDigraph) -> tuple[Edge, ...]:
    """Best single-label approximate Wheeler subgraph across all labels."""
    edges, _ = ws_approx_with_witness(graph)
    return edges


def ws_approx_with_witness(graph: LabeledDigraph) -> tuple[tuple[Edge, ...], Ordering]:
    best: tuple[tuple[Edge, ...], Ordering] | None = None
    for k in range(1, graph.sigma + 1):
        sub = label_subgraph(graph, k)
        edges, pi = ws_approx_sigma1(sub)
        if best is None or len(edges) > len(best[0]):
            best = (edges, pi)
    if best is None:  # sigma >= 1 always, but keep the edgeless corner total
        best = ((), Ordering(range(1, graph.n + 1)))
    return best


def approx_report(graph: LabeledDigraph, guard: int = DEFAULT_SUBSET_GUARD) -> dict:
    """Run the approximation and, when feasible, the exact solver; report the
    achieved ratio (exact over approximate, 1 when both are empty)."""
    t0 = time.perf_counter()
    approx_edges = ws_approx(graph)
    t1 = time.perf_counter()
    report = {
        "n": graph.n,
        "e": graph.e,
        "sigma": graph.sigma,
        "edges_kept": len(approx_edges),
        "approx_runtime_ms": (t1 - t0) * 1000.0,
    }
    try:
        t2 = time.perf_counter()
        exact_edges = ws_exact(graph, guard=guard)
        t3 = time.perf_counter()
        report["exact_edges_kept"] = len(exact_edges)
        report["exact_runtime_ms"] = (t3 - t2) * 1000.0
        if len(approx_edges) == 0:
            report["ratio"] = 1.0 if len(exact_edges) == 0 else float("inf")
        else:
            report["ratio"] = len(exact_edges) / len(approx_edges)
    except GuardExceeded:
        report["exact_edges_kept"] = None
        report["ratio"] = None
    return report
