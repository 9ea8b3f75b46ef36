"""Verification of candidate orderings against the Wheeler axioms.

An ordering pi is proper for a graph G when, for any two edges (u, v, k) and
(u', v', k'):

  (i)  k < k'  implies  v <_pi v';
  (ii) k = k' and u <_pi u'  implies  v <=_pi v';

and every in-degree-zero vertex precedes every positive-in-degree vertex.
Self-loops receive no special treatment here; they are checked like any edge.
"""

from __future__ import annotations

from .graph import Edge, LabeledDigraph, Ordering


def _require_permutation(graph: LabeledDigraph, pi: Ordering) -> None:
    if pi.n != graph.n:
        raise ValueError(f"ordering covers {pi.n} vertices, graph has {graph.n}")


def check_ordering(graph: LabeledDigraph, pi: Ordering) -> bool:
    """True iff pi is a proper ordering of graph.

    Runs in O(e log e): edges are sorted by (label, tail rank, head rank) and
    head ranks must be non-decreasing within each label, head blocks must be
    strictly increasing across labels, and in-degree-zero vertices must occupy
    a prefix of the ranks.  This is equivalent to the pairwise definition.
    """
    _require_permutation(graph, pi)
    rank = pi.rank

    max_source_rank = 0
    min_sink_rank = graph.n + 1
    for v in graph.vertices():
        if graph.in_degree(v) == 0:
            max_source_rank = max(max_source_rank, rank(v))
        else:
            min_sink_rank = min(min_sink_rank, rank(v))
    if max_source_rank > min_sink_rank:
        return False

    keyed = sorted((e.label, rank(e.tail), rank(e.head)) for e in graph.edges)
    prev_label = None
    prev_head = 0
    max_head_prev_label = 0
    for label, _tail, head in keyed:
        if label != prev_label:
            if prev_label is not None:
                max_head_prev_label = prev_head
            prev_label = label
            prev_head = 0
        if head <= max_head_prev_label:
            return False  # axiom (i): some smaller label has a head at or past this one
        if head < prev_head:
            return False  # axiom (ii): heads decreased along non-decreasing tails
        prev_head = head
    return True


def violations(graph: LabeledDigraph, pi: Ordering) -> set[Edge]:
    """Every edge participating in a Wheeler-axiom violation under pi.

    An edge is included when it belongs to a pair breaking axiom (i) or (ii)
    (both edges of the pair are reported), when it leaves an in-degree-zero
    vertex placed after some positive-in-degree vertex, or when it enters a
    positive-in-degree vertex placed before some in-degree-zero vertex.  The
    result is empty exactly when check_ordering holds.
    """
    _require_permutation(graph, pi)
    rank = pi.rank
    bad: set[Edge] = set()

    edges = graph.edges
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            if e.label < f.label:
                lo, hi = e, f
            elif f.label < e.label:
                lo, hi = f, e
            else:
                # axiom (ii): same label, crossing tail/head ranks
                ru, rv = rank(e.tail), rank(e.head)
                su, sv = rank(f.tail), rank(f.head)
                if (ru < su and sv < rv) or (su < ru and rv < sv):
                    bad.add(e)
                    bad.add(f)
                continue
            # axiom (i): smaller label must have strictly earlier head
            if rank(lo.head) >= rank(hi.head):
                bad.add(lo)
                bad.add(hi)

    max_source_rank = 0
    min_positive_rank = graph.n + 1
    for v in graph.vertices():
        if graph.in_degree(v) == 0:
            max_source_rank = max(max_source_rank, rank(v))
        else:
            min_positive_rank = min(min_positive_rank, rank(v))
    if max_source_rank > min_positive_rank:
        # the source-first rule is broken: flag edges leaving any misplaced
        # source, and the in-edges of any positive-in-degree vertex placed
        # before some source (deleting those would repair the precedence)
        for e in edges:
            if graph.in_degree(e.tail) == 0 and rank(e.tail) > min_positive_rank:
                bad.add(e)
            if rank(e.head) < max_source_rank:
                bad.add(e)
    return bad


def follow(graph: LabeledDigraph, pi: Ordering, rank_range: tuple[int, int],
           pattern: str | list[int] | tuple[int, ...]) -> set[int]:
    """Vertices reached from a consecutive rank range by traversing `pattern`.

    Requires pi to be proper (path coherence then guarantees the result is a
    consecutive rank interval, which is asserted).  `pattern` is a sequence of
    labels; a string is read one digit per label.
    """
    if not check_ordering(graph, pi):
        raise ValueError("ordering is not proper; path coherence is not available")
    lo, hi = rank_range
    if lo < 1 or hi > graph.n:
        raise ValueError(f"range ({lo}, {hi}) not within 1..{graph.n}")
    labels = [int(c) for c in pattern] if isinstance(pattern, str) else list(pattern)
    current = {pi.vertex_at(r) for r in range(lo, hi + 1)}
    for k in labels:
        if not (1 <= k <= graph.sigma):
            raise ValueError(f"label {k} out of range 1..{graph.sigma}")
        current = {e.head for v in current for e in graph.out_edges(v) if e.label == k}
    ranks = sorted(pi.rank(v) for v in current)
    assert all(b == a + 1 for a, b in zip(ranks, ranks[1:])), \
        "path coherence violated: reached set is not consecutive"
    return current
