from itertools import combinations

import pytest

from capfree.graphs import (Graph, add_universal_clique, blow_up, complete,
                            cube, gnp, hole, induced_subgraph, path)
from capfree.oracles import (InstanceTooLargeError, brute_solve, cycle_weight,
                             enumerate_chordless_cycles, find_any_forbidden,
                             find_forbidden_induced, holes_of,
                             odd_signable_signing, verify_witness)

EVEN_WHEEL = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0),
                       (4, 0), (4, 1), (4, 2), (4, 3)])
K23 = Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
PRISM = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                  (0, 3), (1, 4), (2, 5)])
HOUSE = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1)])


def subset_induced_cycles(g, length):
    """Dumb reference: count vertex subsets inducing a cycle of the given
    length."""
    count = 0
    for sub in combinations(range(g.n), length):
        s, _ = induced_subgraph(g, sub)
        if s.m == length and all(s.degree(v) == 2 for v in s.vertices()):
            count += 1
    return count


def test_c5_has_one_chordless_cycle():
    assert enumerate_chordless_cycles(hole(5)) == [(0, 1, 2, 3, 4)]


def test_k4_has_four_triangles():
    cycles = enumerate_chordless_cycles(complete(4))
    assert sorted(cycles) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def test_cube_chordless_4_cycles():
    # Frozen from the subset-check oracle: the cube has 6 induced C4
    # (and 4 induced C6; nothing longer is chordless).
    g = cube()
    cycles = enumerate_chordless_cycles(g)
    by_len = {}
    for c in cycles:
        by_len[len(c)] = by_len.get(len(c), 0) + 1
    assert subset_induced_cycles(g, 4) == 6
    assert subset_induced_cycles(g, 6) == 4
    assert by_len == {4: 6, 6: 4}


@pytest.mark.parametrize("seed", range(20))
def test_enumeration_matches_subset_oracle(seed):
    g = gnp(8, 0.45, 620 + seed)
    cycles = enumerate_chordless_cycles(g)
    assert len(cycles) == len(set(cycles)), "no duplicates"
    for length in range(3, 9):
        assert sum(1 for c in cycles if len(c) == length) \
            == subset_induced_cycles(g, length)
    for c in cycles:
        assert c[0] == min(c) and c[1] < c[-1], "canonical rotation"


def test_max_len_prunes():
    g = gnp(10, 0.4, 99)
    short = enumerate_chordless_cycles(g, max_len=4)
    full = [c for c in enumerate_chordless_cycles(g) if len(c) <= 4]
    assert sorted(short) == sorted(full)


def test_c4_is_odd_signable():
    signing = odd_signable_signing(hole(4))
    assert signing is not None
    assert cycle_weight((0, 1, 2, 3), signing) % 2 == 1


def test_even_wheel_not_odd_signable():
    assert odd_signable_signing(EVEN_WHEEL) is None


def test_theta_not_odd_signable():
    assert odd_signable_signing(K23) is None


def test_signing_verifies_on_every_cycle():
    g = blow_up(hole(7), [1, 2, 1, 1, 2, 1, 1])
    signing = odd_signable_signing(g)
    assert signing is not None
    for cyc in enumerate_chordless_cycles(g):
        assert cycle_weight(cyc, signing) % 2 == 1


def test_find_even_hole():
    w = find_forbidden_induced(hole(6), "even-hole")
    assert w is not None and len(w.vertices) == 6
    assert find_forbidden_induced(hole(5), "even-hole") is None


def test_find_cap_in_house():
    w = find_forbidden_induced(HOUSE, "cap")
    assert w is not None
    assert verify_witness(HOUSE, w)


def test_even_wheel_sector_parity():
    # Hub on alternating vertices of C6: 3 sectors, odd, so no even wheel.
    alternating = Graph(7, hole(6).edges() + [(6, 0), (6, 2), (6, 4)])
    assert find_forbidden_induced(alternating, "even-wheel") is None
    # Hub on v1, v2, v4, v5: 4 sectors.
    four = Graph(7, hole(6).edges() + [(6, 0), (6, 1), (6, 3), (6, 4)])
    w = find_forbidden_induced(four, "even-wheel")
    assert w is not None and verify_witness(four, w)


def test_find_theta_and_prism():
    theta = find_forbidden_induced(K23, "theta")
    assert theta is not None and verify_witness(K23, theta)
    prism = find_forbidden_induced(PRISM, "prism")
    assert prism is not None and verify_witness(PRISM, prism)
    assert find_forbidden_induced(hole(7), "theta") is None
    assert find_forbidden_induced(hole(7), "prism") is None


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        find_forbidden_induced(hole(4), "pentagon")


def test_witnesses_recheck_on_pool():
    for seed in range(40):
        g = gnp(9, 0.45, 4000 + seed)
        for kind in ("even-hole", "4-hole", "cap", "even-wheel", "triangle",
                     "theta", "prism"):
            w = find_forbidden_induced(g, kind)
            if w is not None:
                assert verify_witness(g, w), (seed, kind)


def test_signing_equivalence_small_pool():
    # Odd-signable iff no even wheel, theta or prism.
    for seed in range(30):
        g = gnp(8, 0.4, 8800 + seed)
        signing = odd_signable_signing(g)
        witness = find_any_forbidden(g, ("even-wheel", "theta", "prism"))
        assert (signing is None) == (witness is not None), seed


def test_brute_g1_values():
    g1 = blow_up(hole(5), [2] * 5)
    assert brute_solve(g1, "chromatic").value == 5
    assert brute_solve(g1, "max-clique").value == 4
    assert brute_solve(g1, "mwss").value == 2


def test_brute_weighted_path():
    g = path(3).with_weights([1, 3, 1])
    assert brute_solve(g, "mwss").value == 3


def test_brute_witnesses():
    g = gnp(10, 0.5, 123)
    chrom = brute_solve(g, "chromatic")
    assert len(chrom.witness) == g.n
    assert all(chrom.witness[u] != chrom.witness[v] for u, v in g.edges())
    clique = brute_solve(g, "max-clique")
    assert g.is_clique(clique.witness)
    stable = brute_solve(g, "mwss")
    assert g.is_stable(stable.witness)


def test_brute_clique_cutset():
    found = brute_solve(path(4), "clique-cutset")
    assert found.value == 1 and found.witness in ((1,), (2,))
    none = brute_solve(hole(5), "clique-cutset")
    assert none.value == 0 and none.witness is None
    disconnected = Graph(4, [(0, 1), (2, 3)])
    assert brute_solve(disconnected, "clique-cutset").witness == ()


def test_brute_guard_reports():
    with pytest.raises(InstanceTooLargeError):
        brute_solve(gnp(20, 0.3, 1), "chromatic")
    # configurable cap
    assert brute_solve(gnp(20, 0.2, 1), "chromatic", max_n=20).value >= 1


def test_chromatic_at_least_clique():
    for seed in range(15):
        g = gnp(9, 0.5, 31 + seed)
        assert brute_solve(g, "chromatic").value \
            >= brute_solve(g, "max-clique").value
    for chordal in (complete(6), path(7),
                    add_universal_clique(complete(3), 2)):
        assert brute_solve(chordal, "chromatic").value \
            == brute_solve(chordal, "max-clique").value


def test_holes_of_excludes_triangles():
    g = Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    assert holes_of(g) == []
    assert len(enumerate_chordless_cycles(g)) == 2
