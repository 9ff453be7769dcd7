from itertools import combinations

import pytest

from capfree.decomposition import (clique_cutset_tree, find_clique_cutset,
                                   tree_to_dot)
from capfree.graphs import Graph, complete, gnp, hole, induced_subgraph, path
from capfree.oracles import brute_solve

K4_MINUS_EDGE = Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
TWO_TRIANGLES = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def test_k4_minus_edge_cutset():
    found = find_clique_cutset(K4_MINUS_EDGE)
    assert found is not None
    cutset, (h1, h2) = found
    assert cutset == (2, 3)
    assert {h1, h2} == {(0,), (1,)}


def test_c5_has_no_cutset():
    assert find_clique_cutset(hole(5)) is None


def test_p4_cutset():
    cutset, (h1, h2) = find_clique_cutset(path(4))
    assert cutset in ((1,), (2,))
    assert not any(path(4).has_edge(a, b) for a in h1 for b in h2)


def test_disconnected_splits_on_empty_clique():
    g = Graph(5, [(0, 1), (2, 3), (3, 4)])
    cutset, (h1, h2) = find_clique_cutset(g)
    assert cutset == ()
    assert {frozenset(h1), frozenset(h2)} \
        == {frozenset({0, 1}), frozenset({2, 3, 4})}


def test_tiny_graphs_have_no_cutset():
    assert find_clique_cutset(Graph(0, [])) is None
    assert find_clique_cutset(Graph(1, [])) is None
    assert find_clique_cutset(complete(2)) is None
    assert find_clique_cutset(complete(6)) is None


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, [e for i, e in enumerate(pairs) if bits >> i & 1])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cutset_detection_exhaustive(n):
    for g in all_graphs(n):
        mine = find_clique_cutset(g)
        ref = brute_solve(g, "clique-cutset")
        assert (mine is None) == (ref.value == 0)
        if mine is not None:
            cutset, (h1, h2) = mine
            assert g.is_clique(cutset)
            assert h1 and h2
            assert not any(g.has_edge(a, b) for a in h1 for b in h2)


def test_p4_tree_atoms():
    tree = clique_cutset_tree(path(4))
    assert tree.atoms() == [(0, 1), (1, 2), (2, 3)] or \
        sorted(tree.atoms()) == [(0, 1), (1, 2), (2, 3)]


def test_c5_tree_single_leaf():
    tree = clique_cutset_tree(hole(5))
    assert tree.atoms() == [(0, 1, 2, 3, 4)]


def test_two_triangles_tree():
    tree = clique_cutset_tree(TWO_TRIANGLES)
    assert sorted(tree.atoms()) == [(0, 1, 2), (1, 2, 3)]
    (node,) = tree.internal_nodes()
    assert node.cutset == (1, 2)


@pytest.mark.parametrize("seed", range(40))
def test_tree_invariants_random(seed):
    g = gnp(10, (0.25, 0.4, 0.55)[seed % 3], 52 + seed)
    tree = clique_cutset_tree(g)
    atoms = tree.atoms()
    assert set().union(*(set(a) for a in atoms)) == set(g.vertices())
    edge_union = set()
    for a in atoms:
        sub, back = induced_subgraph(g, a)
        edge_union |= {(back[u], back[v]) for u, v in sub.edges()}
    assert edge_union == set(g.edges())
    for a in atoms:
        sub, _ = induced_subgraph(g, a)
        assert brute_solve(sub, "clique-cutset").value == 0, \
            "every leaf must be an atom"
    for node in tree.internal_nodes():
        assert g.is_clique(node.cutset)
        left = set(node.left.vertices) - set(node.cutset)
        right = set(node.right.vertices) - set(node.cutset)
        assert left and right
        assert not any(g.has_edge(a, b) for a in left for b in right)
        assert set(node.left.vertices) | set(node.right.vertices) \
            == set(node.vertices)


@pytest.mark.parametrize("seed", range(20))
def test_leaf_bound_on_connected_graphs(seed):
    g = gnp(11, 0.35, 1234 + seed)
    comps = brute_solve(g, "clique-cutset")
    tree = clique_cutset_tree(g)
    if comps.witness != ():   # connected
        assert len(tree.atoms()) <= max(1, g.n - 1)


def test_dot_export():
    dot = tree_to_dot(clique_cutset_tree(TWO_TRIANGLES))
    assert dot.startswith("graph decomposition {")
    assert 'cutset {2,3}' in dot
    assert dot.count("atom") == 2
