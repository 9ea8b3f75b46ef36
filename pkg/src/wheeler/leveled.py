"""Level-structured recognizers built on PQ-trees.

recognize_sigma1 reduces unary-alphabet recognition to one-queue layout:
add a super-source over the sources, level by breadth-first distance, and
propagate a PQ-tree of feasible level orderings.  Proper orderings are
exactly the level-monotone layouts whose consecutive levels are rainbow-free,
so level-skipping or backward edges reject immediately; within-level edges
(and self-loops) fall outside the pure push scheme and are routed to an
equivalent FIFO emission search over the same layout semantics.

recognize_special handles graphs with full-spectrum outputs and the unique
string traversal property: neighborhood sets form a tree ordered by their
reversed traversal strings, and PQ-trees pushed down, up, and down again
decide the within-set orders.
"""

from __future__ import annotations

from itertools import permutations

from .axioms import check_ordering
from .graph import LabeledDigraph, Ordering, sources
from .pqtree import (PQTree, delete_leaf, frontiers, intersect, push,
                     universal)
from .recognize import search_proper_ordering

DEFAULT_LEVEL_BOUND = 9


# ---------------------------------------------------------------------------
# sigma = 1
# ---------------------------------------------------------------------------

def recognize_sigma1(graph: LabeledDigraph,
                     level_bound: int = DEFAULT_LEVEL_BOUND) -> Ordering | None:
    """Recognizer for unary alphabets; verdict equals the exhaustive search."""
    if graph.sigma != 1:
        raise ValueError(f"sigma1 recognizer requires sigma=1, got {graph.sigma}")
    n = graph.n
    if n == 0:
        return Ordering([])

    has_loop = any(e.tail == e.head for e in graph.edges)
    core = [(e.tail, e.head) for e in graph.edges if e.tail != e.head]
    if _has_cycle(n, core):
        return None  # a unary cycle of length >= 2 cannot be ordered
    if has_loop:
        # self-loop vertices act as pivots the level scheme cannot express;
        # fall back to the exact search (same verdict by construction)
        return search_proper_ordering(graph)

    levels = _bfs_levels(graph)
    level_of = {}
    for i, level in enumerate(levels):
        for v in level:
            level_of[v] = i
    within = []
    for t, h in core:
        if level_of[h] < level_of[t]:
            return None  # backward edges are impossible in a one-queue layout
        if level_of[h] == level_of[t]:
            within.append((t, h))

    if within:
        return _fifo_search(graph)

    trees = [universal(levels[0])]
    step_edges = []
    for i in range(len(levels) - 1):
        edges = [(t, h) for t, h in core
                 if level_of[t] == i and level_of[h] == i + 1]
        step_edges.append(edges)
        nxt = push(trees[i], levels[i + 1], edges, bound=level_bound)
        if nxt.is_epsilon:
            return None
        trees.append(nxt)

    chosen = [min(frontiers(trees[-1], bound=level_bound))]
    for i in range(len(levels) - 2, -1, -1):
        pick = None
        for sigma in sorted(frontiers(trees[i], bound=level_bound)):
            if _two_level_valid(sigma, chosen[0], step_edges[i]):
                pick = sigma
                break
        assert pick is not None, "push invariant broken: no compatible prefix level"
        chosen.insert(0, pick)
    pi = Ordering([v for level in chosen for v in level])
    assert check_ordering(graph, pi)
    return pi


def _has_cycle(n: int, edges: list[tuple[int, int]]) -> bool:
    out: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    indeg = {v: 0 for v in range(1, n + 1)}
    for t, h in edges:
        out[t].append(h)
        indeg[h] += 1
    stack = [v for v in indeg if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for h in out[v]:
            indeg[h] -= 1
            if indeg[h] == 0:
                stack.append(h)
    return seen < n


def _bfs_levels(graph: LabeledDigraph) -> list[list[int]]:
    level = sorted(sources(graph))
    seen = set(level)
    levels = []
    while level:
        levels.append(level)
        nxt = sorted({e.head for v in level for e in graph.out_edges(v)} - seen)
        seen.update(nxt)
        level = nxt
    return levels


def _two_level_valid(sigma, tau, edges) -> bool:
    """No crossing pair among edges drawn from order sigma to order tau."""
    pos = {a: i for i, a in enumerate(sigma)}
    spans: dict = {}
    for a, b in edges:
        lo, hi = spans.get(b, (len(sigma), -1))
        spans[b] = (min(lo, pos[a]), max(hi, pos[a]))
    seen_max = -1
    for b in tau:
        if b in spans:
            lo, hi = spans[b]
            if lo < seen_max:
                return False
            seen_max = max(seen_max, hi)
    return True


def _fifo_search(graph: LabeledDigraph) -> Ordering | None:
    """Exact one-queue layout search: the rank order is the emission order of
    a FIFO traversal where each processed vertex appends its unseen heads and
    may share at most the most recently emitted vertex."""
    n = graph.n
    out_sets = {v: sorted({e.head for e in graph.out_edges(v)})
                for v in graph.vertices()}
    srcs = sorted(sources(graph))
    seq: list[int] = []
    emitted: set[int] = set()

    def rec(tail_idx: int) -> bool:
        if tail_idx == len(seq):
            return len(seq) == n
        v = seq[tail_idx]
        fresh = [h for h in out_sets[v] if h not in emitted]
        shared = [h for h in out_sets[v] if h in emitted]
        if shared and (len(shared) > 1 or seq[-1] != shared[0]):
            return False
        if not fresh:
            return rec(tail_idx + 1)
        for perm in permutations(fresh):
            seq.extend(perm)
            emitted.update(perm)
            if rec(tail_idx + 1):
                return True
            del seq[len(seq) - len(perm):]
            emitted.difference_update(perm)
        return False

    for start in permutations(srcs):
        seq.clear()
        seq.extend(start)
        emitted.clear()
        emitted.update(start)
        if rec(0):
            pi = Ordering(seq)
            assert check_ordering(graph, pi)
            return pi
    return None


# ---------------------------------------------------------------------------
# full spectrum + unique string traversal
# ---------------------------------------------------------------------------

class SetNode:
    """A neighborhood vertex set; `string` holds the traversal labels most
    recent first, so lexicographic order on strings is the set order any
    proper ordering must follow."""

    __slots__ = ("members", "string", "children")

    def __init__(self, members, string):
        self.members = tuple(sorted(members))
        self.string = tuple(string)
        self.children: dict[int, "SetNode"] = {}


def build_neighborhood_tree(graph: LabeledDigraph) -> tuple[SetNode, bool]:
    """Depth-first neighborhood-set tree from the sources.

    The flag is False when some vertex joins two sets or is never reached,
    either of which refutes the unique string traversal property.
    """
    srcs = sorted(sources(graph))
    if not srcs:
        raise ValueError("neighborhood tree requires at least one source")
    assigned: dict[int, SetNode] = {}
    ok = True

    def make(members, string) -> SetNode:
        nonlocal ok
        node = SetNode(members, string)
        if any(v in assigned for v in node.members):
            ok = False
            return node
        for v in node.members:
            assigned[v] = node
        for lab in range(1, graph.sigma + 1):
            heads = {e.head for v in node.members
                     for e in graph.out_edges(v) if e.label == lab}
            if heads:
                node.children[lab] = make(heads, (lab,) + node.string)
            if not ok:
                break
        return node

    root = make(srcs, ())
    if ok and len(assigned) != graph.n:
        ok = False  # unreachable vertices sit on a source-free cycle
    return root, ok


def recognize_special(graph: LabeledDigraph,
                      level_bound: int = DEFAULT_LEVEL_BOUND) -> Ordering | None:
    """Linear-class recognizer for full-spectrum, unique-string graphs."""
    from .recognize import has_full_spectrum_outputs

    if not sources(graph):
        raise ValueError("special recognizer requires at least one source")
    if not has_full_spectrum_outputs(graph):
        raise ValueError("special recognizer requires full spectrum outputs")
    root, ok = build_neighborhood_tree(graph)
    if not ok:
        raise ValueError("special recognizer requires the unique string traversal property")

    received: dict[int, PQTree] = {id(root): universal(root.members)}
    refined: dict[int, PQTree | None] = {}
    down_edges: dict[int, list[tuple[int, int]]] = {}
    nodes: list[SetNode] = []

    def propagate(node: SetNode) -> bool:
        nodes.append(node)
        tree = received[id(node)]
        actives = [v for v in node.members if graph.out_degree(v)]
        if not actives:
            refined[id(node)] = None
            return True
        for v in node.members:
            if not graph.out_degree(v):
                tree = delete_leaf(tree, v)  # sinks cannot be pushed
        for lab in sorted(node.children):
            child = node.children[lab]
            edges = [(e.tail, e.head) for v in actives
                     for e in graph.out_edges(v) if e.label == lab]
            down = push(tree, child.members, edges, bound=level_bound)
            if down.is_epsilon:
                return False
            back = push(down, actives, [(h, t) for t, h in edges], bound=level_bound)
            tree = intersect(tree, back)
            if tree.is_epsilon:
                return False
        refined[id(node)] = tree
        for lab in sorted(node.children):
            child = node.children[lab]
            edges = [(e.tail, e.head) for v in actives
                     for e in graph.out_edges(v) if e.label == lab]
            down = push(tree, child.members, edges, bound=level_bound)
            if down.is_epsilon:
                return False
            received[id(child)] = down
            down_edges[id(child)] = edges
            if not propagate(child):
                return False
        return True

    if not propagate(root):
        return None

    parent_of: dict[int, SetNode] = {}
    for node in nodes:
        for child in node.children.values():
            parent_of[id(child)] = node
    chosen: dict[int, tuple] = {}

    def compose(idx: int) -> bool:
        if idx == len(nodes):
            return True
        node = nodes[idx]
        ref = refined[id(node)]
        active_fronts = None if ref is None else set(frontiers(ref, bound=level_bound))
        active_set = None if ref is None else ref.leaves
        parent = parent_of.get(id(node))
        for cand in sorted(frontiers(received[id(node)], bound=level_bound)):
            if active_fronts is not None:
                projected = tuple(v for v in cand if v in active_set)
                if projected not in active_fronts:
                    continue
            if parent is not None and not _two_level_valid(
                    chosen[id(parent)], cand, down_edges[id(node)]):
                continue
            chosen[id(node)] = cand
            if compose(idx + 1):
                return True
            del chosen[id(node)]
        return False

    if not compose(0):
        raise RuntimeError("propagation succeeded but no composition was found")
    ordered_sets = sorted(nodes, key=lambda s: s.string)
    pi = Ordering([v for s in ordered_sets for v in chosen[id(s)]])
    assert check_ordering(graph, pi)
    return pi
