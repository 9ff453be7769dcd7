import pytest

from capfree.construct import GeneratorParams, random_skeleton
from capfree.graphs import Graph, blow_up, complete, cube, gnp, hole, path
from capfree.oracles import brute_solve
from capfree.treewidth import (Ear, EarSequence, SearchBudgetExceeded,
                               TreeDecomposition, TreewidthReject,
                               chordal_clique_number, is_chordal,
                               lift_tree_decomposition, nice_decomposition,
                               skeleton_from_ears, skeleton_tree_decomposition,
                               triangulation_from_ears)
from capfree.twins import extract_skeleton

K66 = Graph(12, [(i, 6 + j) for i in range(6) for j in range(6)])
GRID6 = Graph(36, [(r * 6 + c, r * 6 + c + 1)
                   for r in range(6) for c in range(5)]
              + [(r * 6 + c, (r + 1) * 6 + c)
                 for r in range(5) for c in range(6)])

GOOD_EAR_ON_C5 = Ear(path=(0, 5, 6, 7, 8, 9, 2), apex=1,
                     apex_links=(7,), host=(0, 1, 2, 3, 4))


def test_c5_width_two():
    td = skeleton_tree_decomposition(hole(5))
    assert isinstance(td, TreeDecomposition)
    assert td.width == 2 and td.is_valid(hole(5))


def test_cube_width_at_most_four():
    td = skeleton_tree_decomposition(cube())
    assert td.width <= 4 and td.is_valid(cube())


def test_triangle_input_is_a_precondition_error():
    with pytest.raises(ValueError):
        skeleton_tree_decomposition(complete(3))


def test_k66_rejected_by_exact_search():
    assert skeleton_tree_decomposition(K66) == TreewidthReject(5)


def test_budget_exhaustion_is_undecided():
    with pytest.raises(SearchBudgetExceeded):
        skeleton_tree_decomposition(GRID6, exact_budget=40)


@pytest.mark.parametrize("seed", range(1, 21))
def test_generated_skeletons_have_width_5(seed):
    params = GeneratorParams(seed=seed, ear_count=seed % 5,
                             max_ear_length=6 + 2 * (seed % 2))
    skeleton, _ = random_skeleton(params)
    td = skeleton_tree_decomposition(skeleton)
    assert isinstance(td, TreeDecomposition)
    assert td.width <= 5 and td.is_valid(skeleton)


def test_triangulation_base_c5():
    tri = triangulation_from_ears(EarSequence((0, 1, 2, 3, 4), ()))
    assert is_chordal([set(tri.adj[v]) for v in tri.vertices()])
    # Fan triangulation of a 5-hole: largest clique has 4 vertices.
    assert chordal_clique_number(tri) == 4
    assert brute_solve(tri, "max-clique").value == 4


def test_triangulation_base_c7():
    tri = triangulation_from_ears(EarSequence(tuple(range(7)), ()))
    assert is_chordal([set(tri.adj[v]) for v in tri.vertices()])
    assert chordal_clique_number(tri) <= 5


def test_triangulation_with_one_ear():
    es = EarSequence((0, 1, 2, 3, 4), (GOOD_EAR_ON_C5,))
    tri = triangulation_from_ears(es)
    assert is_chordal([set(tri.adj[v]) for v in tri.vertices()])
    assert chordal_clique_number(tri) <= 6
    skeleton = skeleton_from_ears(es)
    for u, v in skeleton.edges():
        assert tri.has_edge(u, v), "triangulation contains skeleton edges"


def test_triangulation_rejects_non_good_ear():
    bad = Ear(path=(0, 5, 6, 7, 8, 9, 2), apex=1,
              apex_links=(6, 7), host=(0, 1, 2, 3, 4))  # even link count
    with pytest.raises(ValueError):
        triangulation_from_ears(EarSequence((0, 1, 2, 3, 4), (bad,)))


def test_lift_blown_c5():
    g1 = blow_up(hole(5), [2] * 5)
    sd = extract_skeleton(g1)
    td = skeleton_tree_decomposition(sd.skeleton)
    lifted = lift_tree_decomposition(td, sd)
    assert lifted.is_valid(g1)
    assert max(len(b) for b in lifted.bags) <= 6
    assert lifted.width <= 5


def test_lift_universal_adds_one():
    from capfree.graphs import add_universal_clique
    wheel = add_universal_clique(hole(5), 1)
    sd = extract_skeleton(wheel)
    td = skeleton_tree_decomposition(sd.skeleton)
    lifted = lift_tree_decomposition(td, sd)
    assert lifted.width == td.width + 1
    assert lifted.is_valid(wheel)


def test_lift_identity_on_singletons():
    sd = extract_skeleton(hole(7))
    td = skeleton_tree_decomposition(sd.skeleton)
    lifted = lift_tree_decomposition(td, sd)
    assert lifted.bags == td.bags and lifted.width == td.width


def test_lift_rejects_mismatched_skeleton():
    sd = extract_skeleton(hole(7))
    wrong = TreeDecomposition(((0, 1, 9),), ())
    with pytest.raises(ValueError):
        lift_tree_decomposition(wrong, sd)


def test_nice_single_bag():
    td = TreeDecomposition(((0, 1, 2),), ())
    nd = nice_decomposition(td)
    kinds = [n.kind for n in nd.nodes]
    assert kinds.count("leaf") == 1
    assert kinds.count("introduce") == 3
    assert "join" not in kinds
    assert nd.width == td.width
    assert nd.as_tree_decomposition().is_valid(complete(3))


def test_nice_path_of_bags():
    td = TreeDecomposition(((0, 1), (1, 2), (2, 3)), ((0, 1), (1, 2)))
    nd = nice_decomposition(td)
    assert nd.width == 1
    assert "join" not in {n.kind for n in nd.nodes}
    assert nd.as_tree_decomposition().is_valid(path(4))
    assert nd.nodes[nd.root].bag == ()


def test_nice_join_only_at_branches():
    star = TreeDecomposition(((0, 1), (1, 2), (1, 3)), ((0, 1), (0, 2)))
    g = Graph(4, [(0, 1), (1, 2), (1, 3)])
    assert star.is_valid(g)
    nd = nice_decomposition(star)
    joins = [n for n in nd.nodes if n.kind == "join"]
    assert len(joins) == 1
    assert nd.as_tree_decomposition().is_valid(g)
    assert nd.width == star.width


@pytest.mark.parametrize("seed", range(10))
def test_nice_preserves_validity_random(seed):
    g = gnp(9, 0.4, 34 + seed)
    from capfree.treewidth import _min_fill_order, decomposition_from_order
    td = decomposition_from_order(g, _min_fill_order(g))
    nd = nice_decomposition(td)
    assert nd.width == td.width
    assert nd.as_tree_decomposition().is_valid(g)
    for node in nd.nodes:
        assert node.kind in ("leaf", "introduce", "forget", "join")
        if node.kind == "join":
            left, right = node.children
            assert nd.nodes[left].bag == nd.nodes[right].bag == node.bag


def test_validity_checker_catches_violations():
    g = path(3)
    good = TreeDecomposition(((0, 1), (1, 2)), ((0, 1),))
    assert good.is_valid(g)
    missing_vertex = TreeDecomposition(((0, 1),), ())
    assert not missing_vertex.is_valid(g)
    missing_edge = TreeDecomposition(((0, 1), (2,)), ((0, 1),))
    assert not missing_edge.is_valid(g)
    # vertex 0 sits in bags 0 and 2 but not in the bag between them
    disconnected_subtree = TreeDecomposition(((0, 1), (1, 2), (0, 2)),
                                             ((0, 1), (1, 2)))
    assert not disconnected_subtree.is_valid(g)
    not_a_tree = TreeDecomposition(((0, 1), (1, 2)), ((0, 1), (1, 0)))
    assert not not_a_tree.is_valid(g)
