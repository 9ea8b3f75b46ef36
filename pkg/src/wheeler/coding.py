"""The succinct (O, I, L) Wheeler graph code.

With vertices listed in a proper ordering, I concatenates 0^indeg(x) 1 per
vertex, O concatenates 0^outdeg(x) 1, and L lists the label of the out-edge
behind each zero of O, each vertex's out-edges emitted sorted by (label, head
rank).  Decoding scans I right to left, pairing each inbound slot with the
rightmost unused L slot of the required label; the tail is recovered through
rank/select on O.  Backward pattern matching works directly on the code.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import product
from math import ceil, log2
from typing import Iterable, Iterator

from .axioms import check_ordering
from .graph import Edge, GraphFormatError, LabeledDigraph, Ordering


class CodeError(ValueError):
    """The bit vectors do not encode a properly ordered graph."""


class GuardExceeded(RuntimeError):
    """Enumeration space exceeds the configured guard."""


class BitVector:
    """Immutable bit sequence with O(1) rank and select."""

    __slots__ = ("bits", "_rank1", "_ones", "_zeros")

    def __init__(self, bits: str):
        if any(c not in "01" for c in bits):
            raise ValueError("bits must be a string over 0/1")
        self.bits = bits
        acc = 0
        rank1 = [0]
        ones = []
        zeros = []
        for pos, c in enumerate(bits, start=1):
            if c == "1":
                acc += 1
                ones.append(pos)
            else:
                zeros.append(pos)
            rank1.append(acc)
        self._rank1 = tuple(rank1)
        self._ones = tuple(ones)
        self._zeros = tuple(zeros)

    def __len__(self) -> int:
        return len(self.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitVector) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"BitVector({self.bits!r})"

    def rank1(self, i: int) -> int:
        """Number of ones among the first i bits (0 <= i <= len)."""
        return self._rank1[i]

    def rank0(self, i: int) -> int:
        return i - self._rank1[i]

    def select1(self, j: int) -> int:
        """1-based position of the j-th one (1 <= j <= count)."""
        return self._ones[j - 1]

    def select0(self, j: int) -> int:
        return self._zeros[j - 1]

    @property
    def count1(self) -> int:
        return len(self._ones)

    @property
    def count0(self) -> int:
        return len(self._zeros)


@dataclass(frozen=True)
class WheelerCode:
    """The (O, I, L) triple together with its declared n, e, sigma."""

    o: BitVector
    i: BitVector
    labels: tuple[int, ...]
    n: int
    e: int
    sigma: int

    def __post_init__(self):
        if len(self.o) != self.e + self.n or len(self.i) != self.e + self.n:
            raise ValueError("O and I must both have length e+n")
        if self.o.count1 != self.n or self.i.count1 != self.n:
            raise ValueError("O and I must each contain exactly n ones")
        if len(self.labels) != self.e:
            raise ValueError("L must list one label per edge")
        if any(not 1 <= lab <= self.sigma for lab in self.labels):
            raise ValueError("label out of range in L")

    @classmethod
    def from_bits(cls, o_bits: str, i_bits: str, labels: Iterable[int],
                  sigma: int) -> "WheelerCode":
        o = BitVector(o_bits)
        return cls(o, BitVector(i_bits), tuple(labels),
                   n=o.count1, e=o.count0, sigma=sigma)


def code_size_bits(code: WheelerCode) -> int:
    """Payload size: 2(e+n) bits plus ceil(log2 sigma) bits per label for sigma >= 2."""
    label_bits = code.e * ceil(log2(code.sigma)) if code.sigma >= 2 else 0
    return 2 * (code.e + code.n) + label_bits


def _degrees(bv: BitVector, n: int) -> list[int]:
    """Zero-run lengths before each one; rejects trailing zeros."""
    if bv.count1 != n:
        raise CodeError("wrong number of ones")
    if n and bv.select1(n) != len(bv):
        raise CodeError("trailing zeros after the last vertex")
    degs = []
    prev = 0
    for j in range(1, n + 1):
        pos = bv.select1(j)
        degs.append(pos - prev - 1)
        prev = pos
    return degs


def encode(graph: LabeledDigraph, pi: Ordering) -> WheelerCode:
    """Encode a graph under a proper ordering; raises when pi is not proper."""
    if not check_ordering(graph, pi):
        raise ValueError("ordering is not proper; the code is only defined for Wheeler pairs")
    i_bits = []
    o_bits = []
    labels: list[int] = []
    for r in range(1, graph.n + 1):
        v = pi.vertex_at(r)
        i_bits.append("0" * graph.in_degree(v) + "1")
        o_bits.append("0" * graph.out_degree(v) + "1")
        for e in sorted(graph.out_edges(v), key=lambda e: (e.label, pi.rank(e.head))):
            labels.append(e.label)
    return WheelerCode(BitVector("".join(o_bits)), BitVector("".join(i_bits)),
                       tuple(labels), n=graph.n, e=graph.e, sigma=graph.sigma)


def _inbound_labels(code: WheelerCode) -> tuple[list[int], list[int], list[int | None]]:
    """(indegs, outdegs, per-vertex inbound label) with full validity checking."""
    n = code.n
    indegs = _degrees(code.i, n)
    outdegs = _degrees(code.o, n)
    if sum(outdegs) != code.e or sum(indegs) != code.e:
        raise CodeError("degree sums disagree with e")

    seen_positive = False
    for d in indegs:
        if d > 0:
            seen_positive = True
        elif seen_positive:
            raise CodeError("an in-degree-zero vertex follows a positive one")

    # per-vertex out-label slices must be sorted: the canonical emission order
    pos = 0
    for d in outdegs:
        chunk = code.labels[pos:pos + d]
        if any(a > b for a, b in zip(chunk, chunk[1:])):
            raise CodeError("out-labels of one vertex are not sorted")
        pos += d

    counts = [0] * (code.sigma + 1)
    for lab in code.labels:
        counts[lab] += 1
    inlab: list[int | None] = []
    k = 1
    remaining = counts[1] if code.sigma >= 1 else 0
    for d in indegs:
        if d == 0:
            inlab.append(None)
            continue
        while remaining == 0 and k < code.sigma:
            k += 1
            remaining = counts[k]
        if d > remaining:
            raise CodeError("inbound block boundary straddles a vertex")
        inlab.append(k)
        remaining -= d
    return indegs, outdegs, inlab


def decode(code: WheelerCode) -> tuple[LabeledDigraph, Ordering]:
    """Reconstruct the graph on vertices 1..n in code order.

    The identity ordering of the result is proper; codes that cannot be read
    this way (straddled label blocks, misplaced sources, unsorted out-slots,
    exhausted labels) raise CodeError.
    """
    indegs, outdegs, inlab = _inbound_labels(code)
    n = code.n

    slot_owner = [v for v in range(1, n + 1) for _ in range(outdegs[v - 1])]
    unused: dict[int, list[int]] = {}
    for j, lab in enumerate(code.labels):
        unused.setdefault(lab, []).append(j)

    edges = []
    for v in range(n, 0, -1):
        k = inlab[v - 1]
        for _ in range(indegs[v - 1]):
            slots = unused.get(k)
            if not slots:
                raise CodeError(f"no unused label-{k} slot remains")
            j = slots.pop()
            edges.append(Edge(slot_owner[j], v, k))
    graph = LabeledDigraph(n, code.sigma, edges)
    identity = Ordering(range(1, n + 1))
    if not check_ordering(graph, identity):
        raise CodeError("decoded graph is not properly ordered by the code order")
    return graph, identity


def enumerate_codes(n: int, e: int, sigma: int,
                    guard_bits: int = 24) -> Iterator[WheelerCode]:
    """All decodable (O, I, L) triples in lexicographic (O, I, L) order."""
    label_bits = e * ceil(log2(sigma)) if sigma >= 2 else 0
    if 2 * (e + n) + label_bits > guard_bits:
        raise GuardExceeded(f"2^{2 * (e + n) + label_bits} candidates exceed 2^{guard_bits}")
    if n == 0:
        return
    for o_bits in _degree_strings(n, e):
        for i_bits in _degree_strings(n, e):
            for labels in product(range(1, sigma + 1), repeat=e):
                try:
                    code = WheelerCode.from_bits(o_bits, i_bits, labels, sigma=sigma)
                    decode(code)
                except CodeError:
                    continue
                yield code


def _degree_strings(n: int, e: int) -> Iterator[str]:
    """Bit strings 0^d1 1 ... 0^dn 1 with e zeros, in lexicographic order."""
    if n == 0:
        if e == 0:
            yield ""
        return
    # lexicographic over strings: '0' sorts before '1', so recurse on the prefix
    def rec(ones_left: int, zeros_left: int) -> Iterator[str]:
        if ones_left == 0:
            if zeros_left == 0:
                yield ""
            return
        if zeros_left:
            for rest in rec(ones_left, zeros_left - 1):
                yield "0" + rest
        for rest in rec(ones_left - 1, zeros_left):
            yield "1" + rest

    yield from rec(n, e)


# ---------------------------------------------------------------------------
# backward search
# ---------------------------------------------------------------------------

def backward_step(code: WheelerCode, rank_range: tuple[int, int],
                  k: int) -> tuple[int, int]:
    """Vertices reachable by one k-labeled edge from a rank interval.

    Intervals are inclusive (lo, hi) pairs; (1, 0) is the empty interval.
    Path coherence keeps the result consecutive.
    """
    if not 1 <= k <= code.sigma:
        raise ValueError(f"label {k} out of range 1..{code.sigma}")
    lo, hi = rank_range
    if lo > hi:
        return (1, 0)
    if lo < 1 or hi > code.n:
        raise ValueError(f"range ({lo}, {hi}) not within 1..{code.n}")

    indegs, outdegs, inlab = _inbound_labels(code)
    slot_owner = [v for v in range(1, code.n + 1) for _ in range(outdegs[v - 1])]
    tails = [slot_owner[j] for j, lab in enumerate(code.labels) if lab == k]
    heads = [v for v in range(1, code.n + 1) if inlab[v - 1] == k
             for _ in range(indegs[v - 1])]
    c1 = bisect_left(tails, lo)
    c2 = bisect_right(tails, hi)
    if c1 >= c2:
        return (1, 0)
    return (heads[c1], heads[c2 - 1])


def match_pattern(code: WheelerCode, pattern) -> tuple[int, int]:
    """Iterated backward_step over the pattern, starting from the full interval."""
    labels = [int(c) for c in pattern] if isinstance(pattern, str) else list(pattern)
    rng = (1, code.n)
    for k in labels:
        rng = backward_step(code, rng, k)
        if rng[0] > rng[1]:
            return (1, 0)
    return rng


# ---------------------------------------------------------------------------
# code files
# ---------------------------------------------------------------------------

def serialize_code(code: WheelerCode) -> str:
    """Code file: header, O bits, I bits, L (blank when e = 0 or sigma = 1)."""
    l_line = "" if code.sigma == 1 else " ".join(str(x) for x in code.labels)
    return (f"wgc {code.n} {code.e} {code.sigma}\n"
            f"{code.o.bits}\n{code.i.bits}\n{l_line}\n")


def parse_code(text: str) -> WheelerCode:
    lines = text.splitlines()
    lines += [""] * (4 - len(lines))
    header = lines[0].split()
    if len(header) != 4 or header[0] != "wgc":
        raise GraphFormatError("expected header 'wgc <n> <e> <sigma>'", 1)
    try:
        n, e, sigma = int(header[1]), int(header[2]), int(header[3])
    except ValueError:
        raise GraphFormatError("non-integer field in header", 1) from None
    o_bits, i_bits = lines[1].strip(), lines[2].strip()
    l_toks = lines[3].split()
    if sigma == 1 and not l_toks:
        labels = (1,) * e
    else:
        try:
            labels = tuple(int(t) for t in l_toks)
        except ValueError:
            raise GraphFormatError("non-integer label", 4) from None
    try:
        code = WheelerCode.from_bits(o_bits, i_bits, labels, sigma=sigma)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    if code.n != n or code.e != e:
        raise GraphFormatError(f"bit vectors disagree with header n={n} e={e}")
    return code
