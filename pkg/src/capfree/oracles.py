"""Brute-force reference oracles, intended for desk-scale instances.

Everything here is exhaustive by definition and serves as ground truth for
the structural algorithms.  Witnesses are returned in a canonical order and
re-check against their definitional predicate via verify_witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional

from .graphs import Graph, induced_subgraph


class InstanceTooLargeError(RuntimeError):
    """An oracle was asked to exceed its configured size guard."""

    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what}: instance has n={n}, guard allows {cap}")
        self.n = n
        self.cap = cap


def _mask_of(vs) -> int:
    mask = 0
    for v in vs:
        mask |= 1 << v
    return mask


def enumerate_chordless_cycles(g: Graph, max_len: Optional[int] = None
                               ) -> list[tuple[int, ...]]:
    """All chordless cycles of length >= 3, each once, canonically ordered.

    Canonical form: the cycle starts at its minimum vertex and continues
    toward the smaller of that vertex's two cycle neighbors.  Enumeration
    is DFS path extension keeping the path induced; exponential in the
    worst case, fine at oracle scale.
    """
    cycles: list[tuple[int, ...]] = []
    for s in range(g.n):
        s_mask = g.mask(s)
        high = ~((1 << (s + 1)) - 1)

        def extend(p: list[int], blocked_mid: int, path_mask: int):
            last = p[-1]
            allowed = g.mask(last) & high & ~path_mask & ~blocked_mid
            if max_len is None or len(p) + 1 <= max_len:
                closing = allowed & s_mask
                second = p[1]
                while closing:
                    low = closing & -closing
                    closing ^= low
                    w = low.bit_length() - 1
                    if second < w:
                        cycles.append(tuple(p) + (w,))
            if max_len is not None and len(p) + 2 > max_len:
                return
            extendable = allowed & ~s_mask
            while extendable:
                low = extendable & -extendable
                extendable ^= low
                w = low.bit_length() - 1
                extend(p + [w], blocked_mid | g.mask(last), path_mask | low)

        for a in g.adj[s]:
            if a > s:
                extend([s, a], 0, (1 << s) | (1 << a))
    return cycles


def holes_of(g: Graph, max_len: Optional[int] = None) -> list[tuple[int, ...]]:
    """Chordless cycles of length at least 4."""
    return [c for c in enumerate_chordless_cycles(g, max_len) if len(c) >= 4]


Signing = dict[tuple[int, int], int]


def cycle_weight(cyc: tuple[int, ...], signing: Signing) -> int:
    total = 0
    for i in range(len(cyc)):
        u, v = cyc[i], cyc[(i + 1) % len(cyc)]
        total += signing[(u, v) if u < v else (v, u)]
    return total


def odd_signable_signing(g: Graph) -> Optional[Signing]:
    """A 0/1 edge signing making every chordless cycle odd, or None.

    Builds one GF(2) equation per chordless cycle and eliminates over a
    dense bit-matrix.  Any returned signing is verified against all
    enumerated cycles before being returned.
    """
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    cycles = enumerate_chordless_cycles(g)
    const_bit = 1 << len(edges)
    pivots: dict[int, int] = {}
    for cyc in cycles:
        row = const_bit
        for i in range(len(cyc)):
            u, v = cyc[i], cyc[(i + 1) % len(cyc)]
            row ^= 1 << index[(u, v) if u < v else (v, u)]
        for piv in sorted(pivots):
            if row >> piv & 1:
                row ^= pivots[piv]
        lead = row & ~const_bit
        if lead == 0:
            if row & const_bit:
                return None
            continue
        pivots[(lead & -lead).bit_length() - 1] = row
    signing = {e: 0 for e in edges}
    # Free variables stay 0; pivot variables are forced in reverse order.
    for piv in sorted(pivots, reverse=True):
        row = pivots[piv]
        value = 1 if row & const_bit else 0
        rest = row & ~const_bit & ~(1 << piv)
        while rest:
            low = rest & -rest
            rest ^= low
            value ^= signing[edges[low.bit_length() - 1]]
        signing[edges[piv]] = value
    for cyc in cycles:
        assert cycle_weight(cyc, signing) % 2 == 1, "signing failed re-check"
    return signing


@dataclass(frozen=True)
class ForbiddenWitness:
    """A vertex list realizing a named forbidden structure.

    parts gives the structural breakdown: (cycle,) for holes, (hole, (apex,))
    for caps and wheels, and the three paths for thetas and prisms.
    """
    kind: str
    vertices: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]

    def relabel(self, mapping) -> "ForbiddenWitness":
        return ForbiddenWitness(
            self.kind,
            tuple(mapping[v] for v in self.vertices),
            tuple(tuple(mapping[v] for v in part) for part in self.parts))


def _is_induced_cycle(g: Graph, cyc: tuple[int, ...]) -> bool:
    k = len(cyc)
    if k < 3 or len(set(cyc)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = j - i == 1 or (i == 0 and j == k - 1)
            if g.has_edge(cyc[i], cyc[j]) != adjacent:
                return False
    return True


def _is_induced_path(g: Graph, p: tuple[int, ...]) -> bool:
    if len(set(p)) != len(p):
        return False
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if g.has_edge(p[i], p[j]) != (j - i == 1):
                return False
    return True


def verify_witness(g: Graph, w: ForbiddenWitness) -> bool:
    """Re-check a witness against the definition of its kind."""
    if w.kind == "triangle":
        (tri,) = w.parts
        return len(tri) == 3 and len(set(tri)) == 3 and g.is_clique(tri)
    if w.kind in ("even-hole", "4-hole"):
        (cyc,) = w.parts
        if not _is_induced_cycle(g, cyc) or len(cyc) < 4 or len(cyc) % 2:
            return False
        return len(cyc) == 4 if w.kind == "4-hole" else True
    if w.kind == "cap":
        cyc, (apex,) = w.parts
        if not _is_induced_cycle(g, cyc) or len(cyc) < 4 or apex in cyc:
            return False
        nbrs = [i for i, v in enumerate(cyc) if g.has_edge(apex, v)]
        if len(nbrs) != 2:
            return False
        i, j = nbrs
        return j - i == 1 or (i == 0 and j == len(cyc) - 1)
    if w.kind == "even-wheel":
        cyc, (hub,) = w.parts
        if not _is_induced_cycle(g, cyc) or len(cyc) < 4 or hub in cyc:
            return False
        count = sum(1 for v in cyc if g.has_edge(hub, v))
        return count >= 3 and count % 2 == 0
    if w.kind == "theta":
        p1, p2, p3 = w.parts
        x, y = p1[0], p1[-1]
        if any(p[0] != x or p[-1] != y for p in (p2, p3)):
            return False
        if x == y or g.has_edge(x, y):
            return False
        interiors = [p[1:-1] for p in (p1, p2, p3)]
        if any(not inner for inner in interiors):
            return False
        seen: set[int] = set()
        for inner in interiors:
            if seen & set(inner):
                return False
            seen |= set(inner)
        if any(not _is_induced_path(g, p) for p in (p1, p2, p3)):
            return False
        for a, b in combinations(interiors, 2):
            if any(g.has_edge(u, v) for u in a for v in b):
                return False
        return True
    if w.kind == "prism":
        p1, p2, p3 = w.parts
        tri1 = (p1[0], p2[0], p3[0])
        tri2 = (p1[-1], p2[-1], p3[-1])
        if not (g.is_clique(tri1) and g.is_clique(tri2)):
            return False
        vs = [v for p in w.parts for v in p]
        if len(set(vs)) != len(vs):
            return False
        if any(not _is_induced_path(g, p) for p in w.parts):
            return False
        for a, b in combinations(w.parts, 2):
            for u in a:
                for v in b:
                    if g.has_edge(u, v) and {u, v} not in ({a[0], b[0]},
                                                           {a[-1], b[-1]}):
                        return False
        return True
    raise ValueError(f"unknown witness kind {w.kind!r}")


def _find_triangle(g: Graph) -> Optional[ForbiddenWitness]:
    for u in g.vertices():
        for v in g.adj[u]:
            if v <= u:
                continue
            common = g.mask(u) & g.mask(v) & ~((1 << (v + 1)) - 1)
            if common:
                w = (common & -common).bit_length() - 1
                return ForbiddenWitness("triangle", (u, v, w), ((u, v, w),))
    return None


def _find_hole(g: Graph, exact_len: Optional[int] = None
               ) -> Optional[ForbiddenWitness]:
    for cyc in enumerate_chordless_cycles(g, exact_len):
        if len(cyc) < 4 or len(cyc) % 2:
            continue
        if exact_len is not None and len(cyc) != exact_len:
            continue
        kind = "4-hole" if exact_len == 4 else "even-hole"
        return ForbiddenWitness(kind, cyc, (cyc,))
    return None


def _find_cap(g: Graph) -> Optional[ForbiddenWitness]:
    for cyc in enumerate_chordless_cycles(g):
        if len(cyc) < 4:
            continue
        on_hole = set(cyc)
        for apex in g.vertices():
            if apex in on_hole:
                continue
            nbrs = [i for i, v in enumerate(cyc) if g.has_edge(apex, v)]
            if len(nbrs) != 2:
                continue
            i, j = nbrs
            if j - i == 1 or (i == 0 and j == len(cyc) - 1):
                return ForbiddenWitness("cap", cyc + (apex,), (cyc, (apex,)))
    return None


def _find_even_wheel(g: Graph) -> Optional[ForbiddenWitness]:
    for cyc in enumerate_chordless_cycles(g):
        if len(cyc) < 4:
            continue
        on_hole = set(cyc)
        for hub in g.vertices():
            if hub in on_hole:
                continue
            count = sum(1 for v in cyc if g.has_edge(hub, v))
            if count >= 3 and count % 2 == 0:
                return ForbiddenWitness("even-wheel", cyc + (hub,),
                                        (cyc, (hub,)))
    return None


def _induced_paths_between(g: Graph, x: int, y: int) -> list[tuple[int, ...]]:
    """All induced x..y paths with at least one interior vertex.

    Requires x and y nonadjacent.  A path vertex adjacent to y must be the
    last interior, so such paths close immediately.
    """
    results: list[tuple[int, ...]] = []
    y_mask = 1 << y

    def extend(p: list[int], blocked: int, path_mask: int):
        last = p[-1]
        nbrs = g.mask(last)
        if nbrs & y_mask:
            if not blocked & y_mask:
                results.append(tuple(p) + (y,))
            return
        options = nbrs & ~path_mask & ~blocked
        while options:
            low = options & -options
            options ^= low
            extend(p + [low.bit_length() - 1], blocked | nbrs,
                   path_mask | low)

    for a in g.adj[x]:
        if a != y:
            extend([x, a], g.mask(x), (1 << x) | (1 << a))
    return results


def _find_theta(g: Graph) -> Optional[ForbiddenWitness]:
    for x in g.vertices():
        for y in range(x + 1, g.n):
            if g.has_edge(x, y):
                continue
            paths = _induced_paths_between(g, x, y)
            if len(paths) < 3:
                continue
            inner_masks = [_mask_of(p[1:-1]) for p in paths]
            reach_masks = []
            for p in paths:
                reach = 0
                for v in p[1:-1]:
                    reach |= g.mask(v) | (1 << v)
                reach_masks.append(reach)
            for i, j, k in combinations(range(len(paths)), 3):
                if (reach_masks[i] & inner_masks[j]
                        or reach_masks[i] & inner_masks[k]
                        or reach_masks[j] & inner_masks[k]):
                    continue
                flat = tuple(dict.fromkeys(paths[i] + paths[j] + paths[k]))
                return ForbiddenWitness("theta", flat,
                                        (paths[i], paths[j], paths[k]))
    return None


def _triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u in g.vertices():
        for v in g.adj[u]:
            if v <= u:
                continue
            common = g.mask(u) & g.mask(v) & ~((1 << (v + 1)) - 1)
            while common:
                low = common & -common
                common ^= low
                out.append((u, v, low.bit_length() - 1))
    return out


def _corner_paths(g: Graph, a: int, b: int, avoid: set[int]
                  ) -> list[tuple[int, ...]]:
    """Induced a..b paths avoiding the other prism corners."""
    if g.has_edge(a, b):
        return [(a, b)]
    results: list[tuple[int, ...]] = []
    avoid_mask = _mask_of(avoid)
    b_mask = 1 << b

    def extend(p: list[int], blocked: int, path_mask: int):
        last = p[-1]
        nbrs = g.mask(last)
        if nbrs & b_mask:
            if not blocked & b_mask:
                results.append(tuple(p) + (b,))
            return
        options = nbrs & ~path_mask & ~blocked & ~avoid_mask
        while options:
            low = options & -options
            options ^= low
            extend(p + [low.bit_length() - 1], blocked | nbrs,
                   path_mask | low)

    for w in g.adj[a]:
        if w != b and w not in avoid:
            extend([a, w], g.mask(a), (1 << a) | (1 << w))
    return results


def _prism_pair_ok(g: Graph, p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    if set(p) & set(q):
        return False
    for u in p:
        for v in q:
            if g.has_edge(u, v) and {u, v} not in ({p[0], q[0]},
                                                   {p[-1], q[-1]}):
                return False
    return True


def _find_prism(g: Graph) -> Optional[ForbiddenWitness]:
    tris = _triangles(g)
    for i, t1 in enumerate(tris):
        for t2 in tris[i + 1:]:
            if set(t1) & set(t2):
                continue
            for perm in permutations(t2):
                corners = set(t1) | set(t2)
                all_paths = [_corner_paths(g, a, b, corners - {a, b})
                             for a, b in zip(t1, perm)]
                if any(not paths for paths in all_paths):
                    continue
                for p1 in all_paths[0]:
                    for p2 in all_paths[1]:
                        if not _prism_pair_ok(g, p1, p2):
                            continue
                        for p3 in all_paths[2]:
                            if (_prism_pair_ok(g, p1, p3)
                                    and _prism_pair_ok(g, p2, p3)):
                                return ForbiddenWitness(
                                    "prism", p1 + p2 + p3, (p1, p2, p3))
    return None


_FINDERS = {
    "even-hole": lambda g: _find_hole(g),
    "4-hole": lambda g: _find_hole(g, exact_len=4),
    "cap": _find_cap,
    "theta": _find_theta,
    "prism": _find_prism,
    "even-wheel": _find_even_wheel,
    "triangle": _find_triangle,
}


def find_forbidden_induced(g: Graph, kind: str) -> Optional[ForbiddenWitness]:
    """Exhaustive search for one forbidden structure of the given kind."""
    try:
        finder = _FINDERS[kind]
    except KeyError:
        raise ValueError(f"unknown forbidden structure kind {kind!r}")
    witness = finder(g)
    if witness is not None:
        assert verify_witness(g, witness), f"{kind} witness failed re-check"
    return witness


def find_any_forbidden(g: Graph, kinds) -> Optional[ForbiddenWitness]:
    for kind in kinds:
        witness = find_forbidden_induced(g, kind)
        if witness is not None:
            return witness
    return None


@dataclass(frozen=True)
class BruteResult:
    problem: str
    value: int
    witness: Optional[tuple[int, ...]]


DEFAULT_GUARDS = {
    "chromatic": 16,
    "mwss": 24,
    "max-clique": 24,
    "clique-cutset": 16,
}


def brute_solve(g: Graph, problem: str, max_n: Optional[int] = None
                ) -> BruteResult:
    """Exact solver by exhaustive search; guarded by a configurable cap.

    chromatic/max-clique/mwss return value plus witness; clique-cutset
    returns value 1 with the cutset, or value 0 with witness None.
    """
    if problem not in DEFAULT_GUARDS:
        raise ValueError(f"unknown problem {problem!r}")
    cap = DEFAULT_GUARDS[problem] if max_n is None else max_n
    if g.n > cap:
        raise InstanceTooLargeError(f"brute {problem}", g.n, cap)
    if problem == "max-clique":
        value, clique = _brute_max_clique(g)
        return BruteResult(problem, value, clique)
    if problem == "mwss":
        value, stable = _brute_mwss(g, g.weights)
        return BruteResult(problem, value, stable)
    if problem == "chromatic":
        chi, colors = _brute_chromatic(g)
        return BruteResult(problem, chi, colors)
    cutset = _brute_clique_cutset(g)
    if cutset is None:
        return BruteResult(problem, 0, None)
    return BruteResult(problem, 1, cutset)


def _brute_max_clique(g: Graph) -> tuple[int, tuple[int, ...]]:
    best: list = [0, ()]

    def grow(clique: list[int], candidates: int):
        if len(clique) > best[0]:
            best[0] = len(clique)
            best[1] = tuple(clique)
        while candidates:
            if len(clique) + bin(candidates).count("1") <= best[0]:
                return
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            grow(clique + [v], candidates & g.mask(v))

    grow([], (1 << g.n) - 1)
    return best[0], best[1]


def _brute_mwss(g: Graph, weights) -> tuple[int, tuple[int, ...]]:
    """Branch and bound; vertices of nonpositive weight are never taken."""
    order = sorted((v for v in g.vertices() if weights[v] > 0),
                   key=lambda v: (-weights[v], v))
    suffix = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[order[i]]
    best: list = [0, ()]

    def search(i: int, chosen: list[int], excluded: int, total: int):
        if total > best[0]:
            best[0] = total
            best[1] = tuple(sorted(chosen))
        if i == len(order) or total + suffix[i] <= best[0]:
            return
        v = order[i]
        if not excluded >> v & 1:
            search(i + 1, chosen + [v], excluded | g.mask(v) | (1 << v),
                   total + weights[v])
        search(i + 1, chosen, excluded, total)

    search(0, [], 0, 0)
    return best[0], best[1]


def _brute_chromatic(g: Graph) -> tuple[int, tuple[int, ...]]:
    if g.n == 0:
        return 0, ()
    lower = _brute_max_clique(g)[0]
    order = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    for q in range(lower, g.n + 1):
        colors = _try_color(g, order, q)
        if colors is not None:
            return q, colors
    raise AssertionError("unreachable")


def _try_color(g: Graph, order, q: int) -> Optional[tuple[int, ...]]:
    colors = [0] * g.n

    def assign(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {colors[u] for u in g.adj[v] if colors[u]}
        for c in range(1, min(q, used + 1) + 1):
            if c in taken:
                continue
            colors[v] = c
            if assign(i + 1, max(used, c)):
                return True
        colors[v] = 0
        return False

    if assign(0, 0):
        return tuple(colors)
    return None


def _brute_clique_cutset(g: Graph) -> Optional[tuple[int, ...]]:
    if g.n == 0:
        return None
    if not _connected_without(g, ()):
        return ()
    for size in range(1, g.n - 1):
        for sub in combinations(range(g.n), size):
            if g.is_clique(sub) and not _connected_without(g, sub):
                return sub
    return None


def _connected_without(g: Graph, removed) -> bool:
    rest = [v for v in g.vertices() if v not in set(removed)]
    if not rest:
        return True
    sub, _ = induced_subgraph(g, rest)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in sub.adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == sub.n
