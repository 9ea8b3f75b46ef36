import pytest

from wheeler.axioms import check_ordering
from wheeler.graph import Edge, LabeledDigraph, Ordering, sources
from wheeler.leveled import recognize_sigma1, recognize_special
from wheeler.recognize import (GuardExceeded, has_full_spectrum_outputs,
                               has_unique_string_traversal, recognize,
                               recognize_exhaustive, recognize_via_codes,
                               search_proper_ordering)

from util import all_graphs, wheeler_brute


def test_single_edge():
    g = LabeledDigraph(2, 1, [Edge(1, 2, 1)])
    assert recognize_exhaustive(g) == Ordering([1, 2])


def test_inlabel_inconsistent_rejected():
    g = LabeledDigraph(3, 2, [Edge(1, 3, 1), Edge(2, 3, 2)])
    assert recognize_exhaustive(g) is None


def test_sigma1_cycle_rejected():
    tri = LabeledDigraph(3, 1, [Edge(1, 2, 1), Edge(2, 3, 1), Edge(3, 1, 1)])
    assert recognize_exhaustive(tri) is None
    assert recognize_via_codes(tri) is None
    assert recognize_sigma1(tri) is None


def test_engine_returns_lexicographically_least_witness():
    for g in all_graphs(4, 2, 4):
        got = search_proper_ordering(g)
        want = wheeler_brute(g)
        assert (got is None) == (want is None), g.edges
        if got is not None:
            assert got == want, (g.edges, got.order, want.order)


def test_exhaustive_bound_guard():
    g = LabeledDigraph(12, 1, [])
    with pytest.raises(GuardExceeded):
        recognize_exhaustive(g, bound=10)


def test_via_codes_small_example():
    g = LabeledDigraph(2, 1, [Edge(1, 2, 1)])
    pi = recognize_via_codes(g)
    assert pi is not None and check_ordering(g, pi)


def test_via_codes_guard():
    g = LabeledDigraph(10, 2, [Edge(1, 2, 1)] * 10)
    with pytest.raises(GuardExceeded):
        recognize_via_codes(g, guard_bits=24)


def test_via_codes_agrees_with_exhaustive():
    # all graphs with n <= 3, e <= 3, sigma <= 2
    for sigma in (1, 2):
        for n in (1, 2, 3):
            for g in all_graphs(n, sigma, 3, connected_only=False):
                want = search_proper_ordering(g)
                got = recognize_via_codes(g)
                assert (got is None) == (want is None), (n, sigma, g.edges)
                if got is not None:
                    assert check_ordering(g, got)


def test_sigma1_path_accepted():
    g = LabeledDigraph(3, 1, [Edge(1, 2, 1), Edge(2, 3, 1)])
    pi = recognize_sigma1(g)
    assert pi is not None and check_ordering(g, pi)


def test_sigma1_requires_unary_alphabet():
    with pytest.raises(ValueError):
        recognize_sigma1(LabeledDigraph(2, 2, [Edge(1, 2, 1)]))


def test_sigma1_rainbow_forcing_dag_rejected():
    # every topological order of this DAG contains a rainbow
    g = LabeledDigraph(4, 1, [Edge(1, 2, 1), Edge(1, 4, 1), Edge(2, 3, 1),
                              Edge(3, 4, 1), Edge(2, 4, 1)])
    assert search_proper_ordering(g) is None
    assert recognize_sigma1(g) is None


def test_sigma1_within_level_edge_graph():
    # u->a, a->b, u->b: the within-level edge needs the FIFO route
    g = LabeledDigraph(3, 1, [Edge(1, 2, 1), Edge(2, 3, 1), Edge(1, 3, 1)])
    pi = recognize_sigma1(g)
    assert pi is not None and check_ordering(g, pi)


def test_sigma1_agrees_with_exhaustive():
    for n in (1, 2, 3, 4):
        for g in all_graphs(n, 1, 5):
            want = search_proper_ordering(g)
            got = recognize_sigma1(g)
            assert (got is None) == (want is None), (n, g.edges)
            if got is not None:
                assert check_ordering(g, got)


def test_full_spectrum_outputs():
    assert has_full_spectrum_outputs(LabeledDigraph(3, 1, [Edge(1, 2, 1)]))
    assert not has_full_spectrum_outputs(
        LabeledDigraph(3, 2, [Edge(1, 2, 1), Edge(1, 3, 1)]))
    trie = LabeledDigraph(7, 2, [Edge(1, 2, 1), Edge(1, 3, 2), Edge(2, 4, 1),
                                 Edge(2, 5, 2), Edge(3, 6, 1), Edge(3, 7, 2)])
    assert has_full_spectrum_outputs(trie)


def test_unique_string_traversal():
    trie = LabeledDigraph(3, 2, [Edge(1, 2, 1), Edge(1, 3, 2)])
    assert has_unique_string_traversal(trie)
    # diamond: vertex 4 is reached both by "1" (from 2... ) and "21"
    diamond = LabeledDigraph(4, 2, [Edge(1, 2, 1), Edge(1, 3, 2),
                                    Edge(2, 4, 1), Edge(1, 4, 1)])
    assert not has_unique_string_traversal(diamond)
    with pytest.raises(ValueError):
        has_unique_string_traversal(LabeledDigraph(2, 1, [Edge(1, 2, 1), Edge(2, 1, 1)]))


def test_unique_string_traversal_detects_cycles():
    looped = LabeledDigraph(3, 1, [Edge(1, 2, 1), Edge(2, 3, 1), Edge(3, 2, 1)])
    assert not has_unique_string_traversal(looped)


def test_special_trie_accepted_lexicographically():
    trie = LabeledDigraph(7, 2, [Edge(1, 2, 1), Edge(1, 3, 2), Edge(2, 4, 1),
                                 Edge(2, 5, 2), Edge(3, 6, 1), Edge(3, 7, 2)])
    pi = recognize_special(trie)
    assert pi is not None and check_ordering(trie, pi)
    # sets ordered by reversed-path strings: root, then "1"={2}, "11"={4},
    # "12"... lexicographic on prepended strings gives 1, 2, 4, 6, 3, 5, 7
    assert pi.order == (1, 2, 4, 6, 3, 5, 7)


def test_special_preconditions_enforced():
    g = LabeledDigraph(3, 2, [Edge(1, 2, 1), Edge(1, 3, 1)])
    with pytest.raises(ValueError):
        recognize_special(g)


def test_special_agrees_with_exhaustive_where_applicable():
    for sigma in (1, 2):
        for n in (1, 2, 3, 4):
            for g in all_graphs(n, sigma, 5):
                if not sources(g) or not has_full_spectrum_outputs(g) \
                        or not has_unique_string_traversal(g):
                    continue
                want = search_proper_ordering(g)
                got = recognize_special(g)
                assert (got is None) == (want is None), (n, sigma, g.edges)
                if got is not None:
                    assert check_ordering(g, got)


def test_dispatch_auto():
    path = LabeledDigraph(3, 1, [Edge(1, 2, 1), Edge(2, 3, 1)])
    assert recognize(path, "auto") is not None
    trie = LabeledDigraph(3, 2, [Edge(1, 2, 1), Edge(1, 3, 2)])
    assert recognize(trie, "auto") is not None
    mixed = LabeledDigraph(3, 2, [Edge(1, 2, 1), Edge(2, 3, 2)])
    assert recognize(mixed, "auto") is not None
    with pytest.raises(ValueError):
        recognize(path, "nonsense")
