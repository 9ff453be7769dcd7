import pytest

from capfree.graphs import (Graph, GraphFormatError, add_universal_clique,
                            blow_up, complete, construct_named, cube, gnp,
                            hajos, hole, induced_subgraph, parse_graph, path,
                            serialize_graph)

C5_TEXT = "p 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\n"


def test_parse_c5():
    g = parse_graph(C5_TEXT)
    assert g.n == 5 and g.m == 5
    assert g == hole(5)


def test_parse_single_vertex():
    g = parse_graph("p 1 0\n")
    assert g.n == 1 and g.m == 0


def test_parse_comments_and_weights():
    g = parse_graph("c a comment\np 3 2\ne 1 2\ne 2 3\nw 2 7\n")
    assert g.weights == (1, 7, 1)


@pytest.mark.parametrize("text,line,fragment", [
    ("p 2 1\ne 1 1\n", 2, "loop"),
    ("p 2 1\ne 1 3\n", 2, "1 <= u < v"),
    ("p 2 1\ne 2 1\n", 2, "1 <= u < v"),
    ("p 3 2\ne 1 2\ne 1 2\n", 3, "duplicate"),
    ("p x 0\n", 1, "integers"),
    ("e 1 2\n", 1, "header"),
    ("p 3 2\ne 1 2\n", 1, "declares 2 edges"),
    ("p 2 1\ne 1 2\nw 1 -3\n", 3, "nonnegative"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_round_trip_is_canonical():
    messy = "c hi\np 3 2\ne 2 3\ne 1 3\n"
    g = parse_graph(messy)
    canonical = serialize_graph(g)
    assert parse_graph(canonical) == g
    assert serialize_graph(parse_graph(canonical)) == canonical


def test_weighted_round_trip():
    g = hole(4).with_weights([3, 1, 1, 9])
    assert parse_graph(serialize_graph(g)) == g


def test_named_hole():
    g = construct_named("hole", 5)
    assert g.n == 5 and g.m == 5


def test_named_cube():
    g = construct_named("cube")
    assert g.n == 8 and g.m == 12
    assert all(g.degree(v) == 3 for v in g.vertices())


def test_hajos_matches_figure_adjacency():
    # Independent recount: the 5-hole v1..v5, v6 adjacent to {v1,v2,v3},
    # v7 adjacent to {v1,v4,v5}.
    adj = {1: {2, 5}, 2: {3}, 3: {4}, 4: {5}, 6: {1, 2, 3}, 7: {1, 4, 5}}
    degrees = {v: 0 for v in range(1, 8)}
    edges = 0
    for u, nbrs in adj.items():
        for v in nbrs:
            degrees[u] += 1
            degrees[v] += 1
            edges += 1
    g = hajos()
    assert g.n == 7 and g.m == edges == 11
    assert sorted((g.degree(v) for v in g.vertices()), reverse=True) \
        == sorted(degrees.values(), reverse=True) == [4, 3, 3, 3, 3, 3, 3]


def test_gnp_is_reproducible():
    a = gnp(20, 0.4, 7)
    b = gnp(20, 0.4, 7)
    c = gnp(20, 0.4, 8)
    assert a == b
    assert a != c


def test_gnp_validates_probability():
    with pytest.raises(ValueError):
        gnp(5, 1.5, 0)


def test_blow_up_g1_counts():
    g1 = blow_up(hole(5), [2] * 5)
    assert g1.n == 10          # |V(G_k)| = 10k at k=1
    assert g1.m == 25          # 5 internal + 5*4 cross edges
    for v in range(0, 10, 2):
        assert g1.has_edge(v, v + 1)


def test_blow_up_identity():
    g = hajos()
    assert blow_up(g, [1] * g.n) == g


def test_blow_up_rejects_zero():
    with pytest.raises(ValueError):
        blow_up(hole(4), [1, 0, 1, 1])


def test_blow_up_contracts_back():
    g = gnp(8, 0.4, 3)
    sizes = [1 + (v % 3) for v in g.vertices()]
    big = blow_up(g, sizes)
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s
    block_of = {}
    for v in g.vertices():
        for i in range(sizes[v]):
            block_of[offsets[v] + i] = v
    contracted = {(min(block_of[a], block_of[b]),
                   max(block_of[a], block_of[b]))
                  for a, b in big.edges() if block_of[a] != block_of[b]}
    assert contracted == set(g.edges())


def test_universal_clique_wheel():
    w = add_universal_clique(hole(5), 1)
    assert w.degree(5) == 5
    assert add_universal_clique(hole(5), 0) == hole(5)
    assert add_universal_clique(complete(3), 2) == complete(5)


def test_induced_subgraph():
    empty, _ = induced_subgraph(hole(5), [])
    assert empty.n == 0
    p, back = induced_subgraph(hole(5), [1, 2, 3, 4])
    assert p == path(4) and back == (1, 2, 3, 4)
    tri, _ = induced_subgraph(complete(5), [0, 2, 4])
    assert tri == complete(3)


def test_induced_subgraph_keeps_weights():
    g = path(3).with_weights([5, 6, 7])
    sub, _ = induced_subgraph(g, [0, 2])
    assert sub.weights == (5, 7)


def test_induced_subgraph_range_check():
    with pytest.raises(ValueError):
        induced_subgraph(hole(4), [0, 9])


@pytest.mark.parametrize("seed", range(10))
def test_generated_graphs_are_simple_and_sorted(seed):
    g = gnp(12, 0.5, seed)
    for v in g.vertices():
        nbrs = g.adj[v]
        assert list(nbrs) == sorted(set(nbrs))
        assert v not in nbrs
        for u in nbrs:
            assert v in g.adj[u]


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 5)])


def test_graph_is_immutable():
    g = hole(4)
    with pytest.raises(AttributeError):
        g.n = 7
