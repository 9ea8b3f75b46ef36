import pytest

from wheeler.graph import (Edge, GraphFormatError, LabeledDigraph, Ordering,
                           inlabel_consistent, label_subgraph, nondeterminism,
                           parse_graph, parse_ordering, serialize_graph,
                           serialize_ordering, sources)

from util import all_graphs


def test_parse_single_edge():
    g = parse_graph("wg 2 1 1\n1 2 1\n")
    assert g.n == 2 and g.e == 1 and g.sigma == 1
    assert g.edges == (Edge(1, 2, 1),)


def test_parse_isolated_vertex():
    g = parse_graph("wg 1 0 1\n")
    assert g.n == 1 and g.e == 0


def test_parse_label_out_of_range_reports_line():
    with pytest.raises(GraphFormatError) as err:
        parse_graph("wg 2 1 1\n1 2 5\n")
    assert "label 5" in str(err.value)
    assert err.value.line == 2


def test_parse_vertex_out_of_range_reports_line():
    with pytest.raises(GraphFormatError) as err:
        parse_graph("wg 2 1 1\n1 3 1\n")
    assert err.value.line == 2


def test_parse_malformed_line():
    with pytest.raises(GraphFormatError):
        parse_graph("wg 2 1 1\n1 2\n")
    with pytest.raises(GraphFormatError):
        parse_graph("wg 2 2 1\n1 2 1\n")  # missing edge line


def test_comments_and_blank_lines_ignored():
    g = parse_graph("# a comment\nwg 2 1 1\n\n# another\n1 2 1\n")
    assert g.e == 1


def test_roundtrip_examples():
    for text in ("wg 2 1 1\n1 2 1\n", "wg 1 0 1\n", "wg 3 3 2\n1 2 1\n1 2 1\n3 3 2\n"):
        g = parse_graph(text)
        assert parse_graph(serialize_graph(g)) == g


def test_roundtrip_sweep():
    for g in all_graphs(3, 2, 3, connected_only=False):
        assert parse_graph(serialize_graph(g)) == g


def test_ordering_roundtrip_and_validation():
    pi = parse_ordering("3 1 2\n", n=3)
    assert pi.order == (3, 1, 2)
    assert pi.rank(3) == 1 and pi.vertex_at(3) == 2
    assert parse_ordering(serialize_ordering(pi)) == pi
    with pytest.raises(GraphFormatError):
        parse_ordering("1 1 2\n")
    with pytest.raises(GraphFormatError):
        parse_ordering("1 2\n", n=3)


def test_sources_examples():
    assert sources(parse_graph("wg 2 1 1\n1 2 1\n")) == {1}
    assert sources(LabeledDigraph(3, 1, [])) == {1, 2, 3}
    # a self-loop provides in-degree, so the vertex is not a source
    assert sources(LabeledDigraph(1, 1, [Edge(1, 1, 1)])) == set()


def test_sources_partition_invariant():
    for g in all_graphs(3, 2, 3, connected_only=False):
        src = sources(g)
        rest = {v for v in g.vertices() if g.in_degree(v) > 0}
        assert src | rest == set(g.vertices())
        assert not src & rest


def test_label_subgraph_examples():
    g = LabeledDigraph(3, 2, [Edge(1, 2, 1), Edge(1, 3, 2)])
    sub = label_subgraph(g, 1)
    assert sub.edges == (Edge(1, 2, 1),)
    assert sub.n == 3 and sub.sigma == 2
    assert label_subgraph(g, 2).edges == (Edge(1, 3, 2),)
    edgeless = label_subgraph(LabeledDigraph(3, 2, [Edge(1, 2, 1)]), 2)
    assert edgeless.e == 0 and edgeless.n == 3
    with pytest.raises(ValueError):
        label_subgraph(g, 3)


def test_label_subgraph_partition_identity():
    for g in all_graphs(3, 2, 4, connected_only=False):
        total = sum(label_subgraph(g, k).e for k in range(1, g.sigma + 1))
        assert total == g.e


def test_nondeterminism():
    assert nondeterminism(LabeledDigraph(3, 1, [Edge(1, 2, 1), Edge(1, 3, 1)])) == 2
    assert nondeterminism(LabeledDigraph(3, 2, [Edge(1, 2, 1), Edge(1, 3, 2)])) == 1
    assert nondeterminism(LabeledDigraph(3, 1, [])) == 0
    # parallel duplicates count with multiplicity
    assert nondeterminism(LabeledDigraph(2, 1, [Edge(1, 2, 1)] * 3)) == 3


def test_inlabel_consistent():
    assert inlabel_consistent(LabeledDigraph(3, 2, [Edge(1, 3, 1), Edge(2, 3, 1)]))
    assert not inlabel_consistent(LabeledDigraph(3, 2, [Edge(1, 3, 1), Edge(2, 3, 2)]))


def test_inlabel_consistent_monotone_under_deletion():
    for g in all_graphs(3, 2, 3, connected_only=False):
        if not inlabel_consistent(g):
            continue
        for i in range(g.e):
            assert inlabel_consistent(g.delete_edges([i]))


def test_delete_edges_respects_multiplicity():
    g = LabeledDigraph(2, 1, [Edge(1, 2, 1), Edge(1, 2, 1)])
    assert g.delete_edges([0]).e == 1
    assert g.delete_edges([0, 1]).e == 0
