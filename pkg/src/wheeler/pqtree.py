"""PQ-trees: compact families of leaf orderings closed under consecutivity constraints.

A PQ-tree over a ground set represents a set of permutations (its frontiers):
P-nodes allow arbitrary child order, Q-nodes only reversal.  EPSILON is the
empty family.  The correctness contract throughout this package is frontier
equality, not structural equality; trees are immutable values.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Iterator, Sequence

_EMPTY, _FULL, _PART = 0, 1, 2


class GuardExceeded(RuntimeError):
    """An enumeration bound was exceeded."""


class NotRepresentable(RuntimeError):
    """A permutation family required by an operation is not a PQ family."""


class _Leaf:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x


class _P:
    __slots__ = ("kids",)

    def __init__(self, kids):
        self.kids = tuple(kids)


class _Q:
    __slots__ = ("kids",)

    def __init__(self, kids):
        self.kids = tuple(kids)


def _make_p(kids) -> object:
    kids = [k for k in kids if k is not None]
    if not kids:
        raise ValueError("P-node needs at least one child")
    if len(kids) == 1:
        return kids[0]
    return _P(kids)


def _make_q(kids) -> object:
    kids = [k for k in kids if k is not None]
    if not kids:
        raise ValueError("Q-node needs at least one child")
    if len(kids) == 1:
        return kids[0]
    if len(kids) == 2:
        # two-child Q equals two-child P: frontier families are reversal-closed
        return _P(kids)
    return _Q(kids)


def _group(kids) -> object | None:
    """Bundle sibling nodes under one P-node (None when there are none)."""
    if not kids:
        return None
    if len(kids) == 1:
        return kids[0]
    return _P(kids)


class PQTree:
    """Immutable PQ-tree; `PQTree.EPSILON` is the empty ordering family."""

    __slots__ = ("root", "leaves")

    EPSILON: "PQTree"

    def __init__(self, root):
        self.root = root
        self.leaves = frozenset(_iter_leaves(root)) if root is not None else frozenset()

    @property
    def is_epsilon(self) -> bool:
        return self.root is None

    def __repr__(self) -> str:
        return f"PQTree({dump(self)})"


PQTree.EPSILON = PQTree(None)


def _iter_leaves(node) -> Iterator:
    stack = [node]
    while stack:
        cur = stack.pop()
        if isinstance(cur, _Leaf):
            yield cur.x
        else:
            stack.extend(cur.kids)


def _leafset(node) -> frozenset:
    return frozenset(_iter_leaves(node))


def dump(tree: PQTree) -> str:
    """Debug text form: P(...) for P-nodes, Q[...] for Q-nodes."""
    if tree.is_epsilon:
        return "EPSILON"

    def go(node):
        if isinstance(node, _Leaf):
            return str(node.x)
        inner = " ".join(go(k) for k in node.kids)
        return f"P({inner})" if isinstance(node, _P) else f"Q[{inner}]"

    return go(tree.root)


def universal(leaves: Iterable) -> PQTree:
    """The tree whose frontiers are all orderings of `leaves`."""
    items = sorted(set(leaves))
    if not items:
        raise ValueError("universal tree needs a non-empty leaf set")
    if len(items) == 1:
        return PQTree(_Leaf(items[0]))
    return PQTree(_P([_Leaf(x) for x in items]))


def frontier_count(tree: PQTree) -> int:
    """Number of distinct frontiers, without enumerating them."""
    if tree.is_epsilon:
        return 0

    def go(node):
        if isinstance(node, _Leaf):
            return 1
        total = 1
        for k in node.kids:
            total *= go(k)
        if isinstance(node, _P):
            fact = 1
            for i in range(2, len(node.kids) + 1):
                fact *= i
            return total * fact
        return total * 2

    return go(tree.root)


def frontiers(tree: PQTree, bound: int = 9) -> list[tuple]:
    """All leaf orderings represented by the tree, duplicate-free.

    Exponential; intended as a desk-scale oracle.  Raises GuardExceeded when
    the leaf count exceeds `bound`.
    """
    if tree.is_epsilon:
        return []
    if len(tree.leaves) > bound:
        raise GuardExceeded(f"{len(tree.leaves)} leaves exceeds frontier bound {bound}")

    def go(node) -> list[tuple]:
        if isinstance(node, _Leaf):
            return [(node.x,)]
        kid_fronts = [go(k) for k in node.kids]
        out = []
        if isinstance(node, _P):
            for perm in permutations(range(len(node.kids))):
                out.extend(_concat_product([kid_fronts[i] for i in perm]))
        else:
            out.extend(_concat_product(kid_fronts))
            out.extend(tuple(reversed(f)) for f in _concat_product(kid_fronts))
        return out

    seen = set()
    result = []
    for f in go(tree.root):
        if f not in seen:
            seen.add(f)
            result.append(f)
    return result


def _concat_product(blocks: list[list[tuple]]) -> list[tuple]:
    out = [()]
    for block in blocks:
        out = [acc + piece for acc in out for piece in block]
    return out


# ---------------------------------------------------------------------------
# reduce: Booth-Lueker template pass
# ---------------------------------------------------------------------------

def reduce(tree: PQTree, subset: Iterable) -> PQTree:
    """Restrict the family to frontiers where `subset` is consecutive."""
    if tree.is_epsilon:
        return tree
    s = frozenset(subset)
    unknown = s - tree.leaves
    if unknown:
        raise ValueError(f"unknown leaves in constraint: {sorted(unknown)}")
    if len(s) <= 1 or s == tree.leaves:
        return tree
    root = _reduce_down(tree.root, s)
    return PQTree.EPSILON if root is None else PQTree(root)


def _reduce_down(node, s):
    """Descend to the pertinent root (deepest node covering s), transform there."""
    if isinstance(node, (_P, _Q)):
        for i, kid in enumerate(node.kids):
            if s <= _leafset(kid):
                new_kid = _reduce_down(kid, s)
                if new_kid is None:
                    return None
                kids = list(node.kids)
                kids[i] = new_kid
                return _P(kids) if isinstance(node, _P) else _Q(kids)
    return _apply_root(node, s)


def _state(node, s):
    """Bottom-up template pass below the pertinent root.

    Returns (_EMPTY, node), (_FULL, node), (_PART, seq) where seq is a child
    sequence ordered from the empty end to the full end, or None on failure.
    """
    if isinstance(node, _Leaf):
        return (_FULL if node.x in s else _EMPTY, node)

    results = []
    for kid in node.kids:
        r = _state(kid, s)
        if r is None:
            return None
        results.append(r)

    if isinstance(node, _P):
        empties = [n for st, n in results if st == _EMPTY]
        fulls = [n for st, n in results if st == _FULL]
        parts = [n for st, n in results if st == _PART]
        if len(parts) > 1:
            return None
        if not parts:
            if not fulls:
                return (_EMPTY, node)
            if not empties:
                return (_FULL, node)
            seq = [g for g in (_group(empties), _group(fulls)) if g is not None]
            return (_PART, seq)
        seq = []
        if empties:
            seq.append(_group(empties))
        seq.extend(parts[0])
        if fulls:
            seq.append(_group(fulls))
        return (_PART, seq)

    # Q-node: children must read empties*, optional partial, fulls* in one
    # orientation; the partial child's sequence is spliced at the boundary.
    states = [st for st, _ in results]
    if all(st == _EMPTY for st in states):
        return (_EMPTY, node)
    if all(st == _FULL for st in states):
        return (_FULL, node)
    for ordered in (results, list(reversed(results))):
        seq = _q_partial_seq(ordered)
        if seq is not None:
            return (_PART, seq)
    return None


def _q_partial_seq(ordered):
    """Child sequence for a singly-partial Q-node read empty end first, or None."""
    m = len(ordered)
    i = 0
    while i < m and ordered[i][0] == _EMPTY:
        i += 1
    j = m
    while j > i and ordered[j - 1][0] == _FULL:
        j -= 1
    middle = ordered[i:j]
    if len(middle) > 1 or any(st == _EMPTY or st == _FULL for st, _ in middle):
        return None
    seq = [n for _, n in ordered[:i]]
    if middle:
        st, payload = middle[0]
        if st != _PART:
            return None
        seq.extend(payload)
    seq.extend(n for _, n in ordered[j:])
    return seq


def _apply_root(node, s):
    """Transform the pertinent root so that s-leaves can be made consecutive."""
    if isinstance(node, _Leaf):
        return node

    results = []
    for kid in node.kids:
        r = _state(kid, s)
        if r is None:
            return None
        results.append(r)

    if isinstance(node, _P):
        empties = [n for st, n in results if st == _EMPTY]
        fulls = [n for st, n in results if st == _FULL]
        parts = [payload for st, payload in results if st == _PART]
        if len(parts) > 2:
            return None
        if not parts:
            if not empties or not fulls:
                return node
            return _make_p(empties + [_group(fulls)])
        if len(parts) == 1:
            seq = list(parts[0])
            if fulls:
                seq.append(_group(fulls))
            return _make_p(empties + [_make_q(seq)])
        seq = list(parts[0])
        if fulls:
            seq.append(_group(fulls))
        seq.extend(reversed(parts[1]))
        return _make_p(empties + [_make_q(seq)])

    # Q-node root: pattern empties*, partial?, fulls*, partial?, empties*
    states = [st for st, _ in results]
    if all(st == _EMPTY for st in states) or all(st == _FULL for st in states):
        return node
    m = len(results)
    nonempty = [i for i in range(m) if states[i] != _EMPTY]
    lo, hi = nonempty[0], nonempty[-1]
    if any(states[i] == _EMPTY for i in range(lo, hi + 1)):
        return None
    if any(states[i] == _PART for i in range(lo + 1, hi)):
        return None
    seq: list = [n for _, n in results[:lo]]
    if states[lo] == _PART:
        seq.extend(results[lo][1])
    else:
        seq.append(results[lo][1])
    for i in range(lo + 1, hi):
        seq.append(results[i][1])
    if hi > lo:
        if states[hi] == _PART:
            seq.extend(reversed(results[hi][1]))
        else:
            seq.append(results[hi][1])
    seq.extend(n for _, n in results[hi + 1:])
    return _make_q(seq)


# ---------------------------------------------------------------------------
# intersection, deletion
# ---------------------------------------------------------------------------

def intersect(t1: PQTree, t2: PQTree) -> PQTree:
    """Tree whose frontiers are exactly frontiers(t1) & frontiers(t2)."""
    if t1.is_epsilon or t2.is_epsilon:
        return PQTree.EPSILON
    if t1.leaves != t2.leaves:
        raise ValueError("intersect requires identical leaf sets")
    result = t1
    for constraint in _consecutive_generators(t2.root):
        result = reduce(result, constraint)
        if result.is_epsilon:
            return result
    return result


def _consecutive_generators(node) -> Iterator[frozenset]:
    """Sets consecutive in every frontier: node leaf sets and adjacent Q-child pairs."""
    if isinstance(node, _Leaf):
        return
    yield _leafset(node)
    if isinstance(node, _Q):
        kid_sets = [_leafset(k) for k in node.kids]
        for a, b in zip(kid_sets, kid_sets[1:]):
            yield a | b
    for kid in node.kids:
        yield from _consecutive_generators(kid)


def delete_leaf(tree: PQTree, x) -> PQTree:
    """Project the family onto the remaining leaves."""
    if tree.is_epsilon:
        return tree
    if x not in tree.leaves:
        raise ValueError(f"unknown leaf {x!r}")
    if len(tree.leaves) == 1:
        raise ValueError("cannot delete the only leaf")

    def go(node):
        if isinstance(node, _Leaf):
            return None if node.x == x else node
        kids = [k for k in (go(kid) for kid in node.kids) if k is not None]
        if not kids:
            return None
        if len(kids) == 1:
            return kids[0]
        return _P(kids) if isinstance(node, _P) else _make_q(kids)

    return PQTree(go(tree.root))


def delete_leaves(tree: PQTree, xs: Iterable) -> PQTree:
    result = tree
    for x in xs:
        result = delete_leaf(result, x)
    return result


# ---------------------------------------------------------------------------
# synthesis and push
# ---------------------------------------------------------------------------

def from_permutations(perms: Iterable[Sequence], ground: Iterable) -> PQTree:
    """The PQ-tree whose frontier set equals the given permutation set.

    Raises NotRepresentable when that set is not a PQ family.
    """
    ground = sorted(set(ground))
    perm_set = {tuple(p) for p in perms}
    if not perm_set:
        return PQTree.EPSILON
    for p in perm_set:
        if sorted(p) != ground:
            raise ValueError(f"permutation {p} does not cover the ground set")
    if len(ground) == 1:
        return PQTree(_Leaf(ground[0]))

    tree = universal(ground)
    positions = [{v: i for i, v in enumerate(p)} for p in perm_set]
    for size in range(2, len(ground)):
        for subset in _subsets_of(ground, size):
            if all(_is_consecutive(subset, pos) for pos in positions):
                tree = reduce(tree, subset)
    if frontier_count(tree) != len(perm_set):
        raise NotRepresentable(
            f"{len(perm_set)} permutations vs {frontier_count(tree)} frontiers")
    return tree


def _subsets_of(items: list, size: int) -> Iterator[frozenset]:
    from itertools import combinations
    for combo in combinations(items, size):
        yield frozenset(combo)


def _is_consecutive(subset: frozenset, pos: dict) -> bool:
    ranks = sorted(pos[v] for v in subset)
    return ranks[-1] - ranks[0] == len(ranks) - 1


def push(tree: PQTree, next_level: Iterable, edges: Iterable[tuple],
         bound: int = 9) -> PQTree:
    """Advance a level tree across a two-level edge set.

    The result's frontiers are exactly the orderings of `next_level` that
    extend some frontier of `tree` to a rainbow-free two-level layout of
    `edges` (pairs (a, b) with a in leaves(tree), b in next_level).  EPSILON
    when no extension exists.
    """
    next_items = sorted(set(next_level))
    if not next_items:
        raise ValueError("next level must be non-empty")
    if tree.is_epsilon:
        return PQTree.EPSILON
    edges = list(edges)
    tails_of: dict = {b: set() for b in next_items}
    for a, b in edges:
        if a not in tree.leaves:
            raise ValueError(f"edge tail {a!r} is not a leaf of the level tree")
        if b not in tails_of:
            raise ValueError(f"edge head {b!r} is not in the next level")
        tails_of[b].add(a)
    uncovered = [b for b, ts in tails_of.items() if not ts]
    if uncovered:
        raise ValueError(f"next-level vertices without an incoming edge: {uncovered}")
    if len(next_items) > bound:
        raise GuardExceeded(f"push target of {len(next_items)} exceeds bound {bound}")

    valid: set[tuple] = set()
    for sigma in frontiers(tree, bound=bound):
        pos = {a: i for i, a in enumerate(sigma)}
        spans = {b: (min(pos[a] for a in ts), max(pos[a] for a in ts))
                 for b, ts in tails_of.items()}
        order = _head_orders(next_items, spans)
        if order is not None:
            valid.update(order)
    if not valid:
        return PQTree.EPSILON
    return from_permutations(valid, next_items)


def _head_orders(heads: list, spans: dict) -> list[tuple] | None:
    """All head orders consistent with tail spans, or None when contradictory.

    Head b must precede b' whenever some tail of b is left of some tail of b'
    (min_b < max_b'); a two-way conflict means no order exists.
    """
    succ = {b: set() for b in heads}
    pred_count = {b: 0 for b in heads}
    for i, b in enumerate(heads):
        for c in heads[i + 1:]:
            b_before_c = spans[b][0] < spans[c][1]
            c_before_b = spans[c][0] < spans[b][1]
            if b_before_c and c_before_b:
                return None
            if b_before_c:
                succ[b].add(c)
                pred_count[c] += 1
            elif c_before_b:
                succ[c].add(b)
                pred_count[b] += 1

    out: list[tuple] = []
    acc: list = []

    def rec(remaining: set):
        if not remaining:
            out.append(tuple(acc))
            return
        for b in sorted(remaining):
            if pred_count[b] == 0:
                acc.append(b)
                remaining.discard(b)
                for c in succ[b]:
                    pred_count[c] -= 1
                rec(remaining)
                for c in succ[b]:
                    pred_count[c] += 1
                remaining.add(b)
                acc.pop()

    rec(set(heads))
    return out


def frontier_set(tree: PQTree, bound: int = 9) -> frozenset:
    """Frontiers as a frozenset; convenience for equality checks in tests."""
    return frozenset(frontiers(tree, bound=bound))
