"""Toolkit for Wheeler graphs: proper-ordering verification, recognition,
succinct (O, I, L) codes with backward search, Wheeler subgraph optimization,
and hard-instance generators with brute-force oracles."""

from .axioms import check_ordering, follow, violations
from .coding import (BitVector, CodeError, WheelerCode, backward_step,
                     code_size_bits, decode, encode, enumerate_codes,
                     match_pattern, parse_code, serialize_code)
from .graph import (Edge, GraphFormatError, LabeledDigraph, Ordering,
                    inlabel_consistent, label_subgraph, nondeterminism,
                    parse_graph, parse_ordering, serialize_graph,
                    serialize_ordering, sources)
from .iso import UndirectedGraph, alpha, distance_profile, labeled_iso, undirected_iso
from .leveled import recognize_sigma1, recognize_special
from .optimize import (approx_report, wgv_exact, ws_approx, ws_approx_sigma1,
                       ws_exact)
from .recognize import (GuardExceeded, has_full_spectrum_outputs,
                        has_unique_string_traversal, recognize,
                        recognize_exhaustive, recognize_via_codes)

__all__ = [
    "BitVector", "CodeError", "Edge", "GraphFormatError", "GuardExceeded",
    "LabeledDigraph", "Ordering", "UndirectedGraph", "WheelerCode", "alpha",
    "approx_report", "backward_step", "check_ordering", "code_size_bits",
    "decode", "distance_profile", "encode", "enumerate_codes", "follow",
    "has_full_spectrum_outputs", "has_unique_string_traversal",
    "inlabel_consistent", "label_subgraph", "labeled_iso", "match_pattern",
    "nondeterminism", "parse_code", "parse_graph", "parse_ordering",
    "recognize", "recognize_exhaustive", "recognize_sigma1",
    "recognize_special", "recognize_via_codes", "serialize_code",
    "serialize_graph", "serialize_ordering", "sources", "undirected_iso",
    "violations", "wgv_exact", "ws_approx", "ws_approx_sigma1", "ws_exact",
]
