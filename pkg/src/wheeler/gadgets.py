"""Hard-instance generators: Betweenness, FAS, and not-all-equal SAT inputs
turned into labeled digraphs, with brute-force oracles to certify them.

The oracles are factorial or exponential by design; they exist to check the
generators at desk scale, not to scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from .graph import Edge, GraphFormatError, LabeledDigraph, Ordering


class OracleBoundExceeded(RuntimeError):
    """Instance too large for a brute-force oracle."""


# ---------------------------------------------------------------------------
# instance types and files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BetweennessInstance:
    """Elements 1..n and ordered triples; the middle entry must land between
    the outer two in the chosen total order."""

    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for t in self.triples:
            if len(set(t)) != 3 or any(not 1 <= x <= self.n for x in t):
                raise ValueError(f"bad triple {t}")
        if self.triples and len(self.triples) >= self.n ** 3:
            raise ValueError("triple count must stay below n^3")


@dataclass(frozen=True)
class FasInstance:
    """Elements 1..n and inequalities (a, b) read as 'a before b'."""

    n: int
    inequalities: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for a, b in self.inequalities:
            if a == b or not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"bad inequality {(a, b)}")


@dataclass(frozen=True)
class Naesat4:
    """Clauses of four signed literals; satisfied when not all equal."""

    variables: int
    clauses: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        _check_literals(self.variables, self.clauses, 4)


@dataclass(frozen=True)
class Naesat3Star:
    """Length-3 clauses where every middle-position variable occurs at most
    twice in the whole formula."""

    variables: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        _check_literals(self.variables, self.clauses, 3)
        occurrences: dict[int, int] = {}
        middles = set()
        for a, b, c in self.clauses:
            middles.add(abs(b))
            for lit in (a, b, c):
                occurrences[abs(lit)] = occurrences.get(abs(lit), 0) + 1
        for var in middles:
            if occurrences[var] > 2:
                raise ValueError(
                    f"middle variable x{var} occurs {occurrences[var]} times (max 2)")


def _check_literals(nvars: int, clauses, width: int) -> None:
    for clause in clauses:
        if len(clause) != width:
            raise ValueError(f"clause {clause} must have {width} literals")
        for lit in clause:
            if lit == 0 or abs(lit) > nvars:
                raise ValueError(f"literal {lit} out of range")


def parse_instance(text: str):
    """Parse a btw/fas/nae4/nae3s instance file."""
    lines = [(no, ln.strip()) for no, ln in enumerate(text.splitlines(), start=1)
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise GraphFormatError("empty instance file")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] not in ("btw", "fas", "nae4", "nae3s"):
        raise GraphFormatError("expected header '<kind> <n> <count>'", no)
    kind = parts[0]
    try:
        n, count = int(parts[1]), int(parts[2])
    except ValueError:
        raise GraphFormatError("non-integer field in header", no) from None
    if len(lines) - 1 != count:
        raise GraphFormatError(f"expected {count} body lines, found {len(lines) - 1}")
    width = {"btw": 3, "fas": 2, "nae4": 4, "nae3s": 3}[kind]
    rows = []
    for no, line in lines[1:]:
        toks = line.split()
        if len(toks) != width:
            raise GraphFormatError(f"expected {width} integers", no)
        try:
            rows.append(tuple(int(t) for t in toks))
        except ValueError:
            raise GraphFormatError("non-integer field", no) from None
    try:
        if kind == "btw":
            return BetweennessInstance(n, tuple(rows))
        if kind == "fas":
            return FasInstance(n, tuple(rows))
        if kind == "nae4":
            return Naesat4(n, tuple(rows))
        return Naesat3Star(n, tuple(rows))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def serialize_instance(inst) -> str:
    if isinstance(inst, BetweennessInstance):
        kind, rows = "btw", inst.triples
    elif isinstance(inst, FasInstance):
        kind, rows = "fas", inst.inequalities
    elif isinstance(inst, Naesat4):
        kind, rows = "nae4", inst.clauses
    elif isinstance(inst, Naesat3Star):
        kind, rows = "nae3s", inst.clauses
    else:
        raise TypeError(f"not an instance: {inst!r}")
    n = inst.n if hasattr(inst, "n") else inst.variables
    out = [f"{kind} {n} {len(rows)}"]
    out.extend(" ".join(str(x) for x in row) for row in rows)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def order_satisfies_betweenness(inst: BetweennessInstance, order: Sequence[int]) -> bool:
    pos = {x: i for i, x in enumerate(order)}
    for a, b, c in inst.triples:
        if not (pos[a] < pos[b] < pos[c] or pos[c] < pos[b] < pos[a]):
            return False
    return True


def solve_betweenness(inst: BetweennessInstance,
                      bound: int = 10) -> tuple[int, ...] | None:
    """First satisfying total order in lexicographic order, or None."""
    if inst.n > bound:
        raise OracleBoundExceeded(f"n={inst.n} exceeds factorial bound {bound}")
    for perm in permutations(range(1, inst.n + 1)):
        if order_satisfies_betweenness(inst, perm):
            return perm
    return None


def fas_violations(inst: FasInstance, order: Sequence[int]) -> int:
    pos = {x: i for i, x in enumerate(order)}
    return sum(1 for a, b in inst.inequalities if pos[a] > pos[b])


def fas_brute(inst: FasInstance, bound: int = 10) -> int:
    """Minimum number of violated inequalities over all total orders."""
    if inst.n > bound:
        raise OracleBoundExceeded(f"n={inst.n} exceeds factorial bound {bound}")
    return min(fas_violations(inst, perm)
               for perm in permutations(range(1, inst.n + 1)))


def fas_best_order(inst: FasInstance, bound: int = 10) -> tuple[int, ...]:
    """Lexicographically least order achieving fas_brute."""
    if inst.n > bound:
        raise OracleBoundExceeded(f"n={inst.n} exceeds factorial bound {bound}")
    best = None
    best_viol = None
    for perm in permutations(range(1, inst.n + 1)):
        viol = fas_violations(inst, perm)
        if best_viol is None or viol < best_viol:
            best, best_viol = perm, viol
    return best


def _literal_value(lit: int, assignment: dict[int, bool]) -> bool:
    val = assignment[abs(lit)]
    return val if lit > 0 else not val


def nae_satisfied(clauses, assignment: dict[int, bool]) -> bool:
    for clause in clauses:
        values = {_literal_value(lit, assignment) for lit in clause}
        if len(values) != 2:
            return False
    return True


def solve_naesat(phi, bound: int = 20) -> dict[int, bool] | None:
    """Truth-table search for a not-all-equal assignment."""
    nvars = phi.variables
    if nvars > bound:
        raise OracleBoundExceeded(f"{nvars} variables exceed bound {bound}")
    for bits in product((False, True), repeat=nvars):
        assignment = {i + 1: bits[i] for i in range(nvars)}
        if nae_satisfied(phi.clauses, assignment):
            return assignment
    return None


def naesat4_to_naesat3star(phi: Naesat4) -> Naesat3Star:
    """Split each clause (a, b, c, d) into (a, w, b) and (c, -w, d) with a
    fresh middle variable w per clause; satisfiability is preserved and each
    middle variable occurs exactly twice."""
    clauses = []
    nvars = phi.variables
    for a, b, c, d in phi.clauses:
        nvars += 1
        w = nvars
        clauses.append((a, w, b))
        clauses.append((c, -w, d))
    return Naesat3Star(nvars, tuple(clauses))


# ---------------------------------------------------------------------------
# Betweenness -> Wheeler graph recognition
# ---------------------------------------------------------------------------

def betweenness_to_graph(inst: BetweennessInstance) -> LabeledDigraph:
    """Source v0, an n-by-k grid of label-1 chains duplicating the element
    permutation once per triple, and five label-2 edges per triple."""
    n, k = inst.n, len(inst.triples)
    nverts = 1 + n * k + 3 * k

    def v(i: int, j: int) -> int:
        return 1 + (j - 1) * n + i

    def w(l: int, j: int) -> int:
        return 1 + n * k + 3 * (j - 1) + l

    edges = []
    for i in range(1, n + 1):
        if k >= 1:
            edges.append(Edge(1, v(i, 1), 1))
        for j in range(1, k):
            edges.append(Edge(v(i, j), v(i, j + 1), 1))
    for j, (t1, t2, t3) in enumerate(inst.triples, start=1):
        edges.append(Edge(v(t1, j), w(1, j), 2))
        edges.append(Edge(v(t2, j), w(2, j), 2))
        edges.append(Edge(v(t3, j), w(3, j), 2))
        edges.append(Edge(v(t1, j), w(2, j), 2))
        edges.append(Edge(v(t3, j), w(2, j), 2))
    return LabeledDigraph(nverts, 2, edges)


def betweenness_ordering_to_wheeler(inst: BetweennessInstance,
                                    order: Sequence[int]) -> Ordering:
    """The explicit proper ordering induced by a satisfying total order:
    v0 first, each grid column ordered like the elements, and each triple's
    w-vertices in the relative order of their partner columns."""
    if not order_satisfies_betweenness(inst, order):
        raise ValueError("order does not satisfy the instance")
    n, k = inst.n, len(inst.triples)
    pos = {x: i + 1 for i, x in enumerate(order)}
    ranks = {1: 1}
    for j in range(1, k + 1):
        for i in range(1, n + 1):
            ranks[1 + (j - 1) * n + i] = 1 + (j - 1) * n + pos[i]
    for j, triple in enumerate(inst.triples, start=1):
        by_pos = sorted(range(3), key=lambda l: pos[triple[l]])
        for slot, l in enumerate(by_pos, start=1):
            ranks[1 + n * k + 3 * (j - 1) + (l + 1)] = 1 + n * k + 3 * (j - 1) + slot
    total = 1 + n * k + 3 * k
    seq = [0] * total
    for vertex, rank in ranks.items():
        seq[rank - 1] = vertex
    return Ordering(seq)


# ---------------------------------------------------------------------------
# FAS -> WGV
# ---------------------------------------------------------------------------

def fas_to_wgv_graph(inst: FasInstance, subdivided: bool = False) -> LabeledDigraph:
    """Source, an (n+1)-by-k grid of heavy label-1 chains, a heavy label-2
    spine through the w-vertices, and one light label-2 edge per inequality
    side.  A heavy edge is k+1 parallel copies by default; with
    `subdivided=True` each copy becomes a length-2 path through a fresh
    midpoint (the paper's figure), which does not preserve the FAS optimum.
    """
    n, k = inst.n, len(inst.inequalities)
    if k == 0:
        return LabeledDigraph(1, 2, [])

    def v(i: int, j: int) -> int:
        return 1 + (j - 1) * (n + 1) + i

    def w(l: int, j: int) -> int:
        return 1 + k * (n + 1) + 2 * (j - 1) + l

    heavies: list[tuple[int, int, int]] = []
    for i in range(1, n + 2):
        heavies.append((1, v(i, 1), 1))
    for j in range(1, k):
        for i in range(1, n + 2):
            heavies.append((v(i, j), v(i, j + 1), 1))
    heavies.append((1, w(1, 1), 2))
    for j in range(1, k):
        heavies.append((v(n + 1, j), w(2, j), 2))
        heavies.append((v(n + 1, j), w(1, j + 1), 2))
    heavies.append((v(n + 1, k), w(2, k), 2))

    nverts = 1 + k * (n + 1) + 2 * k
    edges = []
    for tail, head, label in heavies:
        if subdivided:
            for _ in range(k + 1):
                nverts += 1
                edges.append(Edge(tail, nverts, label))
                edges.append(Edge(nverts, head, label))
        else:
            edges.extend(Edge(tail, head, label) for _ in range(k + 1))
    for j, (a, b) in enumerate(inst.inequalities, start=1):
        edges.append(Edge(v(a, j), w(1, j), 2))
        edges.append(Edge(v(b, j), w(2, j), 2))
    return LabeledDigraph(nverts, 2, edges)


def fas_ordering(inst: FasInstance, order: Sequence[int]) -> Ordering:
    """The grid ordering induced by a total order on the elements: v0 first,
    columns ordered like the elements with v_{n+1} last per column, then the
    w block.  Only defined for the parallel (non-subdivided) construction."""
    n, k = inst.n, len(inst.inequalities)
    if k == 0:
        return Ordering([1])
    pos = {x: i + 1 for i, x in enumerate(order)}
    pos[n + 1] = n + 1
    seq = [1]
    for j in range(1, k + 1):
        col = sorted(range(1, n + 2), key=lambda i: pos[i])
        seq.extend(1 + (j - 1) * (n + 1) + i for i in col)
    base = 1 + k * (n + 1)
    seq.extend(range(base + 1, base + 2 * k + 1))
    return Ordering(seq)


# ---------------------------------------------------------------------------
# 3-NAESAT* -> d-NFA recognition (menorah construction)
# ---------------------------------------------------------------------------

class _Builder:
    def __init__(self):
        self.ids: dict = {}
        self.edges: list[tuple] = []

    def vertex(self, name) -> int:
        if name not in self.ids:
            self.ids[name] = len(self.ids) + 1
        return self.ids[name]

    def edge(self, a, b, label: int) -> None:
        self.edges.append((self.vertex(a), self.vertex(b), label))

    def graph(self, sigma: int) -> LabeledDigraph:
        return LabeledDigraph(len(self.ids), sigma,
                              (Edge(t, h, l) for t, h, l in self.edges))


def naesat3star_to_graph(phi: Naesat3Star) -> LabeledDigraph:
    """Single-source DAG whose proper orderings correspond to not-all-equal
    assignments: a menorah fixes every vertex except that x_i and its negation
    may swap, and layered betweenness gadgets encode the clauses."""
    n = phi.variables
    if n == 0:
        raise ValueError("formula needs at least one variable")
    b = _Builder()

    def lit_name(lit: int) -> tuple:
        return ("x", abs(lit)) if lit > 0 else ("nx", abs(lit))

    # menorah spine and arms (all label 1); s_i^0 doubles as the bar arm root
    for i in range(1, n):
        b.edge(("s", i, 0), ("s", i + 1, 0), 1)
    b.edge(("s", n, 0), ("X",), 1)
    for i in range(1, n + 1):
        height = n - i
        prev_pos, prev_neg = ("s", i, 0), ("s", i, 0)
        for j in range(1, height + 1):
            b.edge(prev_pos, ("sp", i, j), 1)
            b.edge(prev_neg, ("sn", i, j), 1)
            prev_pos, prev_neg = ("sp", i, j), ("sn", i, j)
        b.edge(prev_pos, ("x", i), 1)
        b.edge(prev_neg, ("nx", i), 1)

    # one z-chain per clause, hanging from the middle variable's arm root
    for idx, (_, mid, _) in enumerate(phi.clauses, start=1):
        h = abs(mid)
        prev = ("s", h, 0)
        for j in range(1, n - h + 1):
            b.edge(prev, ("z", idx, j), 1)
            prev = ("z", idx, j)
        b.edge(prev, ("Z", idx), 1)

    level0 = ([("x", i) for i in range(1, n + 1)] + [("X",)]
              + [("nx", i) for i in range(n, 0, -1)]
              + [("Z", idx) for idx in range(1, len(phi.clauses) + 1)])

    constraints: list[tuple] = [(("x", i), ("X",), ("nx", i)) for i in range(1, n + 1)]
    for idx, (a, mid, c) in enumerate(phi.clauses, start=1):
        constraints.append((lit_name(a), ("Z", idx), lit_name(mid)))
        constraints.append((lit_name(c), ("X",), ("Z", idx)))

    prev_layer = {name: name for name in level0}
    for m, (y1, y2, y3) in enumerate(constraints, start=1):
        layer = {name: ("copy", m, name) for name in level0}
        for name in level0:
            b.edge(prev_layer[name], layer[name], 1)
        b.edge(layer[y1], ("w", m, 1), 2)
        b.edge(layer[y2], ("w", m, 2), 2)
        b.edge(layer[y3], ("w", m, 3), 2)
        b.edge(layer[y1], ("w", m, 2), 2)
        b.edge(layer[y3], ("w", m, 2), 2)
        prev_layer = layer
    return b.graph(2)
