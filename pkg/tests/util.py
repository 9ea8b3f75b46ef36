"""Shared brute-force oracles and sweep enumerators for the test suite.

Everything here goes back to first principles (pairwise axiom checks over all
permutations, permutation filters, factorial searches) so that the library
implementations are tested against independent computations.
"""

from itertools import combinations, permutations

from wheeler.graph import Edge, LabeledDigraph, Ordering


def proper_by_definition(graph: LabeledDigraph, pi: Ordering) -> bool:
    """Literal pairwise reading of the axioms, as the ground truth."""
    rank = pi.rank
    for e in graph.edges:
        for f in graph.edges:
            if e.label < f.label and rank(e.head) >= rank(f.head):
                return False
            if e.label == f.label and rank(e.tail) < rank(f.tail) \
                    and rank(e.head) > rank(f.head):
                return False
    for v in graph.vertices():
        if graph.in_degree(v) == 0:
            for w in graph.vertices():
                if graph.in_degree(w) > 0 and rank(w) < rank(v):
                    return False
    return True


def wheeler_brute(graph: LabeledDigraph) -> Ordering | None:
    """Try every permutation; lexicographically least witness or None."""
    for perm in permutations(graph.vertices()):
        pi = Ordering(perm)
        if proper_by_definition(graph, pi):
            return pi
    return None


def weakly_connected(n: int, edges) -> bool:
    if n <= 1:
        return True
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in range(1, n + 1)}) == 1


def all_graphs(n: int, sigma: int, max_edges: int, self_loops: bool = True,
               connected_only: bool = True):
    """All simple labeled digraphs on 1..n with at most max_edges edges."""
    candidates = [Edge(u, v, k)
                  for u in range(1, n + 1)
                  for v in range(1, n + 1)
                  if u != v or self_loops
                  for k in range(1, sigma + 1)]
    lo = n - 1 if connected_only else 0
    for count in range(lo, max_edges + 1):
        for combo in combinations(candidates, count):
            if connected_only and not weakly_connected(n, combo):
                continue
            yield LabeledDigraph(n, sigma, combo)


def filtered_permutations(ground, predicate):
    """Permutation-filter oracle for PQ-tree semantics."""
    return {perm for perm in permutations(sorted(ground)) if predicate(perm)}


def consecutive_in(subset, perm) -> bool:
    positions = sorted(i for i, x in enumerate(perm) if x in subset)
    return not positions or positions[-1] - positions[0] == len(positions) - 1
