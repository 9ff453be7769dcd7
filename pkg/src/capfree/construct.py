"""Certified instance generation: good-ear skeletons, blow-ups with
universal cliques, and clique-cutset gluing.

Every emitted instance carries a provenance record (skeletons, ear data,
blow-up sizes, expected clique number) so tests know the right answers
without re-deriving them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .decomposition import find_clique_cutset
from .graphs import (Graph, add_universal_clique, blow_up, hole,
                     serialize_graph)
from .oracles import (find_forbidden_induced, holes_of, odd_signable_signing)
from .recognition import detect_4hole, detect_cap_fast
from .rng import Xoshiro256StarStar
from .treewidth import Ear, EarSequence

TARGET_CLASSES = ("cap-even-hole-free", "cap-4hole-odd-signable")


@dataclass(frozen=True)
class GeneratorParams:
    seed: int
    ear_count: int = 0
    max_ear_length: int = 6
    max_blowup: int = 1
    max_universal: int = 0
    glue_count: int = 0
    target_class: str = "cap-even-hole-free"
    base_length: Optional[int] = None

    def __post_init__(self):
        if min(self.ear_count, self.max_blowup - 1, self.max_universal,
               self.glue_count) < 0:
            raise ValueError("bounds must be nonnegative and max_blowup >= 1")
        if self.max_ear_length < 2:
            raise ValueError("max_ear_length must be at least 2")
        if self.target_class not in TARGET_CLASSES:
            raise ValueError(f"unknown target class {self.target_class!r}")
        if self.base_length is not None and self.base_length < 5:
            raise ValueError("base hole length must be at least 5")


def validate_good_ear(g_prime: Graph, host: tuple[int, ...],
                      path: tuple[int, ...], apex: int,
                      apex_links: tuple[int, ...]) -> tuple[bool, str]:
    """Check the three good-ear conditions for adding the ear `path` to the
    hole `host` of g_prime.

    path runs x, interiors..., z where x and z lie on the host hole and the
    interiors are fresh vertex ids; apex is the common neighbor of x and z
    on the host; apex_links are the interiors the apex will be joined to.
    Precondition violations (not an ear at all) raise ValueError; the
    returned reason names the first failing condition.
    """
    holes = holes_of(g_prime)
    _check_ear_shape(g_prime, host, path, apex, apex_links, holes)
    x, z = path[0], path[-1]
    if (2 + len(apex_links)) % 2 == 0:
        return False, "apex has an even number of neighbors on the ear"
    for h1 in holes:
        on = set(h1)
        if not {x, apex, z} <= on:
            continue
        for v in g_prime.adj[apex]:
            if v in on:
                continue
            if sum(1 for u in h1 if g_prime.has_edge(v, u)) >= 3:
                return False, (f"wheel through the attachments: hole {h1} "
                               f"with center {v}")
    apex_nbrs = set(g_prime.adj[apex])
    for h2 in holes:
        on = set(h2)
        if apex in on or not {x, z} <= on & apex_nbrs:
            continue
        if sum(1 for u in h2 if g_prime.has_edge(apex, u)) >= 3:
            return False, f"apex is a wheel center: hole {h2}"
    return True, "good"


def _check_ear_shape(g_prime, host, path, apex, apex_links, holes):
    if tuple(sorted(host)) not in {tuple(sorted(h)) for h in holes}:
        raise ValueError("host is not a hole of the graph")
    k = len(host)
    pos = {v: i for i, v in enumerate(host)}
    if apex not in pos:
        raise ValueError("apex must lie on the host hole")
    i = pos[apex]
    x, z = path[0], path[-1]
    if {x, z} != {host[i - 1], host[(i + 1) % k]}:
        raise ValueError("attachments must be the apex's host neighbors")
    interior = path[1:-1]
    if len(set(path)) != len(path):
        raise ValueError("ear path repeats a vertex")
    if any(v < g_prime.n for v in interior):
        raise ValueError("ear interior must use fresh vertex ids")
    if not set(apex_links) <= set(interior):
        raise ValueError("apex links must be interior vertices of the ear")


def _ear_menu(max_ear_length: int, even_hole_free: bool
              ) -> list[tuple[int, tuple[int, ...]]]:
    """All (length, link positions) choices that keep the skeleton triangle-
    and 4-hole-free: links at distance >= 3 from both attachments and from
    each other.  The even-hole-free target forces odd link distances, which
    leaves exactly one link on an even-length ear."""
    menu: list[tuple[int, tuple[int, ...]]] = []
    for length in range(6, max_ear_length + 1):
        positions = range(3, length - 2)
        if even_hole_free:
            if length % 2:
                continue
            for j in positions:
                if j % 2:
                    menu.append((length, (j,)))
            continue
        patterns: list[tuple[int, ...]] = [()]
        for j in positions:
            patterns += [p + (j,) for p in patterns if not p or j - p[-1] >= 3]
        menu.extend((length, p) for p in patterns if len(p) % 2 == 1)
    return menu


def random_skeleton(params: GeneratorParams,
                    rng: Optional[Xoshiro256StarStar] = None,
                    even_hole_free: Optional[bool] = None
                    ) -> tuple[Graph, EarSequence]:
    """A triangle-free, cutset-free, odd-signable skeleton built from a
    random base hole by good ear additions.

    Each candidate ear must pass the good-ear conditions, keep the graph
    4-hole-free and cutset-free, and (for the even-hole-free target) pass
    the even-hole oracle.  Fewer ears than requested is permitted when
    sampling stalls; the ear sequence records what was built.
    """
    if rng is None:
        rng = Xoshiro256StarStar(params.seed)
    if even_hole_free is None:
        even_hole_free = params.target_class == "cap-even-hole-free"
    if params.base_length is not None:
        base_len = params.base_length
        if even_hole_free and base_len % 2 == 0:
            raise ValueError("even-hole-free target needs an odd base hole")
    elif even_hole_free:
        base_len = (5, 7)[rng.below(2)]
    else:
        base_len = 5 + rng.below(3)
    base = tuple(range(base_len))
    graph = hole(base_len)
    ears: list[Ear] = []
    menu = _ear_menu(params.max_ear_length, even_hole_free)
    attempts = 30 * params.ear_count + 10
    holes = holes_of(graph)
    while menu and len(ears) < params.ear_count and attempts > 0:
        attempts -= 1
        host = holes[rng.below(len(holes))]
        i = rng.below(len(host))
        apex = host[i]
        x, z = host[i - 1], host[(i + 1) % len(host)]
        length, link_positions = menu[rng.below(len(menu))]
        interior = tuple(range(graph.n, graph.n + length - 1))
        path = (x,) + interior + (z,)
        links = tuple(interior[j - 1] for j in link_positions)
        ok, _ = validate_good_ear(graph, host, path, apex, links)
        if not ok:
            continue
        edges = graph.edges()
        edges.extend(zip(path, path[1:]))
        edges.extend((apex, u) for u in links)
        candidate = Graph(graph.n + len(interior), edges)
        assert find_forbidden_induced(candidate, "triangle") is None
        assert find_forbidden_induced(candidate, "4-hole") is None
        if even_hole_free and find_forbidden_induced(
                candidate, "even-hole") is not None:
            continue
        if find_clique_cutset(candidate) is not None:
            continue
        graph = candidate
        ears.append(Ear(path, apex, links, host))
        holes = holes_of(graph)
    assert odd_signable_signing(graph) is not None, \
        "generated skeleton must be odd-signable"
    return graph, EarSequence(base, tuple(ears))


def glue_atoms(atoms: list[Graph],
               joints: list[tuple[int, int, tuple[int, ...], tuple[int, ...]]]
               ) -> tuple[Graph, list[list[int]]]:
    """Identify cliques across atoms; the joint pattern must be a forest.

    Each joint (a, b, clique_a, clique_b) merges clique_a of atoms[a] with
    clique_b of atoms[b] position by position.  Returns the glued graph and
    per-atom maps from local to glued vertex ids.  Every joint clique
    becomes a clique cutset of the result.
    """
    count = len(atoms)
    atom_parent = list(range(count))

    def find_atom(a: int) -> int:
        while atom_parent[a] != a:
            atom_parent[a] = atom_parent[atom_parent[a]]
            a = atom_parent[a]
        return a

    pairs = [(a, v) for a, g in enumerate(atoms) for v in g.vertices()]
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b, ca, cb in joints:
        if len(ca) != len(cb):
            raise ValueError("joint cliques must have equal size")
        if not atoms[a].is_clique(ca) or not atoms[b].is_clique(cb):
            raise ValueError("joint sets must be cliques")
        ra, rb = find_atom(a), find_atom(b)
        if ra == rb:
            raise ValueError("joint pattern must be acyclic across atoms")
        atom_parent[ra] = rb
        for u, v in zip(ca, cb):
            if atoms[a].weight(u) != atoms[b].weight(v):
                raise ValueError("identified vertices must agree on weight")
            ri, rj = find(index[a, u]), find(index[b, v])
            parent[max(ri, rj)] = min(ri, rj)
    rep_ids: dict[int, int] = {}
    maps = [[0] * g.n for g in atoms]
    for i, (a, v) in enumerate(pairs):
        root = find(i)
        if root not in rep_ids:
            rep_ids[root] = len(rep_ids)
        maps[a][v] = rep_ids[root]
    n = len(rep_ids)
    edge_set = set()
    for a, g in enumerate(atoms):
        for u, v in g.edges():
            gu, gv = maps[a][u], maps[a][v]
            edge_set.add((min(gu, gv), max(gu, gv)))
    weighted = any(g.has_weights() for g in atoms)
    weights = None
    if weighted:
        weights = [1] * n
        for a, g in enumerate(atoms):
            for v in g.vertices():
                weights[maps[a][v]] = g.weight(v)
    return Graph(n, sorted(edge_set), weights), maps


def generate_instance(params: GeneratorParams) -> tuple[Graph, dict]:
    """A certified in-class instance plus its provenance record.

    glue_count+1 atoms are built (skeleton, blow-up, universal clique) and
    glued along cliques chosen inside single twin classes, which provably
    preserves the class.  Atoms that receive a universal clique use an
    even-hole-free skeleton regardless of target, since a universal vertex
    over an even hole would break odd-signability.
    """
    rng = Xoshiro256StarStar(params.seed)
    atoms: list[Graph] = []
    infos: list[dict] = []
    for _ in range(params.glue_count + 1):
        universal = rng.below(params.max_universal + 1)
        even_hole_free = (params.target_class == "cap-even-hole-free"
                          or universal > 0)
        skeleton, es = random_skeleton(params, rng=rng,
                                       even_hole_free=even_hole_free)
        sizes = [1 + rng.below(params.max_blowup)
                 for _ in skeleton.vertices()]
        atom = add_universal_clique(blow_up(skeleton, sizes), universal)
        offsets = []
        total = 0
        for s in sizes:
            offsets.append(total)
            total += s
        classes = [tuple(range(offsets[v], offsets[v] + sizes[v]))
                   for v in skeleton.vertices()]
        universal_ids = tuple(range(total, total + universal))
        omega = universal + max(
            max(sizes),
            max((sizes[u] + sizes[v] for u, v in skeleton.edges()),
                default=0))
        atoms.append(atom)
        infos.append({
            "skeleton": serialize_graph(skeleton),
            "base_hole": list(es.base),
            "ears": [{"path": list(e.path), "apex": e.apex,
                      "apex_links": list(e.apex_links),
                      "host": list(e.host)} for e in es.ears],
            "ears_requested": params.ear_count,
            "blowup_sizes": sizes,
            "universal": universal,
            "even_hole_free_skeleton": even_hole_free,
            "classes": [list(c) for c in classes],
            "universal_ids": list(universal_ids),
            "clique_number": omega,
        })
    joints = []
    for a in range(1, len(atoms)):
        b = rng.below(a)
        size = 1 + rng.below(2)
        ja = _joint_in_class(infos[a], size, rng)
        jb = _joint_in_class(infos[b], len(ja), rng)
        if len(jb) < len(ja):
            ja = ja[:len(jb)]
        joints.append((b, a, jb, ja))
    glued, maps = glue_atoms(atoms, joints)
    assert detect_4hole(glued) is None, "generated instance has a 4-hole"
    assert detect_cap_fast(glued) is None, "generated instance has a cap"
    provenance = {
        "params": {
            "seed": params.seed, "ear_count": params.ear_count,
            "max_ear_length": params.max_ear_length,
            "max_blowup": params.max_blowup,
            "max_universal": params.max_universal,
            "glue_count": params.glue_count,
            "target_class": params.target_class,
            "base_length": params.base_length,
        },
        "atoms": infos,
        "atom_vertex_maps": [list(m) for m in maps],
        "joints": [{"atoms": [b, a], "clique_first": list(jb),
                    "clique_second": list(ja)}
                   for b, a, jb, ja in joints],
        "clique_number": max(info["clique_number"] for info in infos),
        "n": glued.n,
        "m": glued.m,
    }
    return glued, provenance


def _joint_in_class(info: dict, size: int, rng: Xoshiro256StarStar
                    ) -> tuple[int, ...]:
    """A clique of the requested size inside one twin class of the atom."""
    pools = [tuple(c) for c in info["classes"]]
    if info["universal_ids"]:
        pools.append(tuple(info["universal_ids"]))
    big = [p for p in pools if len(p) >= size]
    if not big:
        size = 1
        big = [p for p in pools if p]
    chosen = big[rng.below(len(big))]
    start = rng.below(len(chosen) - size + 1)
    return chosen[start:start + size]
