"""Wheeler graph recognition.

Four interchangeable algorithms decide whether a graph admits a proper
ordering: exhaustive pruned backtracking (the reference), enumeration of
succinct codes plus isomorphism, a queue-layout procedure for sigma = 1, and
a PQ-tree propagation for the full-spectrum / unique-string-traversal class.
Every accepted graph comes with a witness ordering that passes check_ordering.
"""

from __future__ import annotations

from math import ceil, log2

from .axioms import check_ordering
from .graph import LabeledDigraph, Ordering, inlabel_consistent, sources

DEFAULT_EXHAUSTIVE_BOUND = 10
DEFAULT_CODE_GUARD_BITS = 24


class GuardExceeded(RuntimeError):
    """Input exceeds a configured enumeration bound."""


# ---------------------------------------------------------------------------
# exhaustive backtracking over rank positions
# ---------------------------------------------------------------------------

def search_proper_ordering(graph: LabeledDigraph) -> Ordering | None:
    """Lexicographically least proper ordering, or None.

    Backtracking over rank positions with structural pruning: inbound-label
    consistency is required up front, the block layout (sources, then one
    block per inbound label) fixes which vertices may occupy each position,
    interchangeable twin vertices are placed in id order, and same-label edge
    pairs are checked incrementally treating unplaced vertices as future
    (hence larger) ranks.
    """
    n = graph.n
    if n == 0:
        return Ordering([])
    if not inlabel_consistent(graph):
        return None

    # block 0 holds the sources; block k holds the label-k receivers
    block = [0] * (n + 1)
    for v in graph.vertices():
        ins = graph.in_edges(v)
        block[v] = ins[0].label if ins else 0
    members: dict[int, list[int]] = {}
    for v in graph.vertices():
        members.setdefault(block[v], []).append(v)
    block_of_pos = []
    for b in sorted(members):
        block_of_pos.extend([b] * len(members[b]))

    # same-label edge pairs are checked on deduplicated (tail, head) pairs
    label_edges: dict[int, list[tuple[int, int]]] = {}
    for e in set(graph.edges):
        label_edges.setdefault(e.label, []).append((e.tail, e.head))
    in_pairs: dict[int, list[tuple[int, int]]] = {v: [] for v in graph.vertices()}
    touching: dict[int, list[tuple[int, tuple[int, int]]]] = {v: [] for v in graph.vertices()}
    for k, pairs in label_edges.items():
        for t, h in pairs:
            in_pairs[h].append((t, h))
            touching[t].append((k, (t, h)))
            if h != t:
                touching[h].append((k, (t, h)))

    twin_prev = _twin_predecessors(graph)

    rank = [0] * (n + 1)
    order: list[int] = []

    def consistent_after(v: int) -> bool:
        for k, e in touching[v]:
            t1, h1 = e
            r_t1, r_h1 = rank[t1], rank[h1]
            for t2, h2 in label_edges[k]:
                if t2 == t1:
                    continue
                r_t2, r_h2 = rank[t2], rank[h2]
                # e before f: certain t1 < t2 and certain h2 < h1
                if r_t1 and r_h2 and (not r_t2 or r_t1 < r_t2) and h1 != h2 \
                        and (not r_h1 or r_h2 < r_h1):
                    return False
                # f before e: certain t2 < t1 and certain h1 < h2
                if r_t2 and r_h1 and (not r_t1 or r_t2 < r_t1) and h1 != h2 \
                        and (not r_h2 or r_h1 < r_h2):
                    return False
        return True

    def candidates(pos: int) -> list[int]:
        b = block_of_pos[pos - 1]
        unplaced = [v for v in members[b] if not rank[v]]
        if b:
            # only heads whose earliest placed inbound tail is minimal can come
            # next: a head with a later key is forced after every earlier one
            keyed = [(min((rank[t] for t, _ in in_pairs[h] if rank[t]), default=n + 1), h)
                     for h in unplaced]
            best = min(key for key, _ in keyed)
            unplaced = [h for key, h in keyed if key == best]
        return [v for v in unplaced if twin_prev[v] is None or rank[twin_prev[v]]]

    def rec(pos: int) -> bool:
        if pos > n:
            return True
        b = block_of_pos[pos - 1]
        for v in candidates(pos):
            rank[v] = pos
            order.append(v)
            if consistent_after(v) and rec(pos + 1):
                return True
            rank[v] = 0
            order.pop()
        return False

    if rec(1):
        return Ordering(order)
    return None


def _twin_predecessors(graph: LabeledDigraph) -> list[int | None]:
    """For each vertex, the previous member of its twin class (by id), if any.

    Twins have identical inbound and outbound (neighbor, label) multisets and
    no self-loops; exchanging two twins maps any proper ordering to a proper
    ordering, so the lexicographically least witness places twins in id order.
    """
    sig: dict[tuple, int] = {}
    prev: list[int | None] = [None] * (graph.n + 1)
    for v in graph.vertices():
        if any(e.head == v for e in graph.out_edges(v)):
            continue
        key = (tuple(sorted((e.tail, e.label) for e in graph.in_edges(v))),
               tuple(sorted((e.head, e.label) for e in graph.out_edges(v))))
        if key in sig:
            prev[v] = sig[key]
        sig[key] = v
    return prev


def recognize_exhaustive(graph: LabeledDigraph,
                         bound: int = DEFAULT_EXHAUSTIVE_BOUND) -> Ordering | None:
    """Reference recognizer; guards on the vertex count."""
    if graph.n > bound:
        raise GuardExceeded(f"n={graph.n} exceeds exhaustive bound {bound}")
    pi = search_proper_ordering(graph)
    if pi is not None:
        assert check_ordering(graph, pi)
    return pi


# ---------------------------------------------------------------------------
# recognition through code enumeration
# ---------------------------------------------------------------------------

def code_space_bits(n: int, e: int, sigma: int) -> int:
    """log2 of the candidate-code bound 2^(2(e+n) + e*ceil(log2 sigma))."""
    label_bits = e * ceil(log2(sigma)) if sigma >= 2 else 0
    return 2 * (e + n) + label_bits


def recognize_via_codes(graph: LabeledDigraph,
                        guard_bits: int = DEFAULT_CODE_GUARD_BITS) -> Ordering | None:
    """Enumerate candidate (O, I, L) codes, decode, and test label-preserving
    isomorphism against the input; the first match induces the witness.

    Candidates that cannot match on degree or label statistics are skipped;
    this prunes the enumeration without changing the verdict.
    """
    from .coding import CodeError, WheelerCode, decode
    from .iso import labeled_iso

    n, e, sigma = graph.n, graph.e, graph.sigma
    if code_space_bits(n, e, sigma) > guard_bits:
        raise GuardExceeded(
            f"code space 2^{code_space_bits(n, e, sigma)} exceeds 2^{guard_bits}")
    if n == 0:
        return Ordering([])
    if not inlabel_consistent(graph):
        return None

    profiles = []
    for v in graph.vertices():
        out_labels = tuple(sorted(e2.label for e2 in graph.out_edges(v)))
        in_lab = graph.in_edges(v)[0].label if graph.in_degree(v) else 0
        profiles.append((in_lab, graph.in_degree(v), out_labels))
    # positions are forced into blocks: sources first, then in-label ascending
    profiles.sort()

    seen: set[tuple] = set()
    for arrangement in _distinct_arrangements(profiles):
        labs = [p[0] for p in arrangement]
        if labs != sorted(labs):
            continue  # decoded in-labels ascend, so matching arrangements do too
        i_bits = "".join("0" * indeg + "1" for _, indeg, _ in arrangement)
        o_bits = "".join("0" * len(outs) + "1" for _, _, outs in arrangement)
        labels = tuple(lab for _, _, outs in arrangement for lab in outs)
        if (i_bits, o_bits, labels) in seen:
            continue
        seen.add((i_bits, o_bits, labels))
        try:
            code = WheelerCode.from_bits(o_bits, i_bits, labels, sigma=sigma)
            decoded, _ = decode(code)
        except CodeError:
            continue
        mapping = labeled_iso(graph, decoded)
        if mapping is not None:
            pi = Ordering([v for v, _ in sorted(mapping.items(), key=lambda kv: kv[1])])
            assert check_ordering(graph, pi)
            return pi
    return None


def _distinct_arrangements(items: list):
    """Distinct permutations of a multiset, in lexicographic order."""
    from collections import Counter

    counts = Counter(items)
    keys = sorted(counts)
    acc: list = []

    def rec():
        if len(acc) == len(items):
            yield list(acc)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                acc.append(k)
                yield from rec()
                acc.pop()
                counts[k] += 1

    yield from rec()


# ---------------------------------------------------------------------------
# structural class tests and dispatch
# ---------------------------------------------------------------------------

def has_full_spectrum_outputs(graph: LabeledDigraph) -> bool:
    """Every vertex with outgoing edges carries all labels 1..sigma on them."""
    all_labels = set(range(1, graph.sigma + 1))
    for v in graph.vertices():
        outs = graph.out_edges(v)
        if outs and {e.label for e in outs} != all_labels:
            return False
    return True


def has_unique_string_traversal(graph: LabeledDigraph) -> bool:
    """At most one label string connects any two neighborhood sets.

    Detected by building the neighborhood-set tree from the sources: the
    property fails exactly when a vertex joins two sets or some vertex is
    never reached (which indicates a cycle).
    """
    from .leveled import build_neighborhood_tree

    if not sources(graph):
        raise ValueError("unique string traversal requires at least one source")
    root, ok = build_neighborhood_tree(graph)
    return ok


def recognize(graph: LabeledDigraph, algo: str = "auto", *,
              bound: int = DEFAULT_EXHAUSTIVE_BOUND,
              guard_bits: int = DEFAULT_CODE_GUARD_BITS) -> Ordering | None:
    """Dispatch to one of the four recognizers.

    `auto` picks sigma1 for unary alphabets, the special-class recognizer when
    its preconditions hold, and exhaustive search (within its bound) otherwise.
    """
    from .leveled import recognize_sigma1, recognize_special

    if algo == "exhaustive":
        return recognize_exhaustive(graph, bound=bound)
    if algo == "codes":
        return recognize_via_codes(graph, guard_bits=guard_bits)
    if algo == "sigma1":
        return recognize_sigma1(graph)
    if algo == "special":
        return recognize_special(graph)
    if algo != "auto":
        raise ValueError(f"unknown algorithm {algo!r}")

    if graph.sigma == 1:
        return recognize_sigma1(graph)
    if sources(graph) and has_full_spectrum_outputs(graph) \
            and has_unique_string_traversal(graph):
        return recognize_special(graph)
    return recognize_exhaustive(graph, bound=bound)
