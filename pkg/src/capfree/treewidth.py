"""Tree decompositions: width-5 decompositions of skeletons, the ear-based
triangulation, lifting to atoms, and nice form for dynamic programming.

Strategy for skeletons: min-fill triangulation first; if that exceeds
width 5, an exact budgeted branch-and-bound either finds a width-5
elimination order or proves none exists (certifying the graph is not a
triangle-free odd-signable skeleton).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .graphs import Graph, vertex_set
from .twins import SkeletonDecomposition


class SearchBudgetExceeded(RuntimeError):
    """The exact width search ran out of its node budget; the width bound
    is undecided, never silently wrong."""


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def is_valid(self, g: Graph) -> bool:
        """Coverage, edge coverage, and connected-subtree checks, plus the
        bag graph being a tree."""
        k = len(self.bags)
        if k == 0:
            return g.n == 0
        if len(self.edges) != k - 1:
            return False
        nbrs: list[list[int]] = [[] for _ in range(k)]
        for a, b in self.edges:
            if not (0 <= a < k and 0 <= b < k):
                return False
            nbrs[a].append(b)
            nbrs[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != k:
            return False
        covered = set()
        for b in self.bags:
            covered.update(b)
        if covered != set(g.vertices()):
            return False
        bag_sets = [set(b) for b in self.bags]
        for u, v in g.edges():
            if not any(u in b and v in b for b in bag_sets):
                return False
        for v in g.vertices():
            holding = [i for i in range(k) if v in bag_sets[i]]
            reached = {holding[0]}
            stack = [holding[0]]
            hold_set = set(holding)
            while stack:
                x = stack.pop()
                for y in nbrs[x]:
                    if y in hold_set and y not in reached:
                        reached.add(y)
                        stack.append(y)
            if reached != hold_set:
                return False
        return True


@dataclass(frozen=True)
class TreewidthReject:
    """Exact search proved the treewidth exceeds the stated bound."""
    bound: int


def _min_fill_order(g: Graph) -> list[int]:
    adj = [set(g.adj[v]) for v in g.vertices()]
    alive = set(g.vertices())
    order = []
    while alive:
        best = min(alive, key=lambda v: (_fill_count(adj, v), len(adj[v]), v))
        order.append(best)
        _eliminate(adj, best)
        alive.discard(best)
    return order


def _fill_count(adj: list[set[int]], v: int) -> int:
    nbrs = list(adj[v])
    return sum(1 for i, a in enumerate(nbrs) for b in nbrs[i + 1:]
               if b not in adj[a])


def _eliminate(adj: list[set[int]], v: int) -> None:
    nbrs = list(adj[v])
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            adj[a].add(b)
            adj[b].add(a)
    for a in nbrs:
        adj[a].discard(v)
    adj[v].clear()


def _fill_from_order(g: Graph, order: list[int]) -> list[set[int]]:
    """Triangulation obtained by playing the elimination game."""
    adj = [set(g.adj[v]) for v in g.vertices()]
    filled = [set(g.adj[v]) for v in g.vertices()]
    for v in order:
        nbrs = list(adj[v])
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
                filled[a].add(b)
                filled[b].add(a)
        for a in nbrs:
            adj[a].discard(v)
        adj[v].clear()
    return filled


def _order_width(g: Graph, order: list[int]) -> int:
    adj = [set(g.adj[v]) for v in g.vertices()]
    width = 0
    for v in order:
        width = max(width, len(adj[v]))
        _eliminate(adj, v)
    return width


def mcs_order(adj: list[set[int]]) -> list[int]:
    """Maximum cardinality search; reversed result is a perfect elimination
    order iff the graph is chordal."""
    n = len(adj)
    weight = [0] * n
    numbered = [False] * n
    out = []
    for _ in range(n):
        v = max((u for u in range(n) if not numbered[u]),
                key=lambda u: (weight[u], -u))
        numbered[v] = True
        out.append(v)
        for u in adj[v]:
            if not numbered[u]:
                weight[u] += 1
    return out[::-1]


def is_chordal(adj: list[set[int]]) -> bool:
    """Zero fill-in under a maximum cardinality search ordering."""
    order = mcs_order(adj)
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in adj[v] if position[u] > position[v]]
        for i, a in enumerate(later):
            for b in later[i + 1:]:
                if b not in adj[a]:
                    return False
    return True


def clique_tree(adj: list[set[int]]) -> TreeDecomposition:
    """Clique tree of a chordal graph: maximal cliques as bags, tree by
    maximum-weight running intersection (Kruskal, deterministic ties)."""
    n = len(adj)
    if n == 0:
        return TreeDecomposition((), ())
    order = mcs_order(adj)
    position = {v: i for i, v in enumerate(order)}
    cliques = []
    for v in order:
        cliques.append(frozenset([v] + [u for u in adj[v]
                                        if position[u] > position[v]]))
    maximal = [c for c in set(cliques)
               if not any(c < d for d in cliques)]
    bags = sorted(vertex_set(c) for c in maximal)
    k = len(bags)
    weighted = sorted(
        ((-len(set(bags[i]) & set(bags[j])), i, j)
         for i in range(k) for j in range(i + 1, k)
         if set(bags[i]) & set(bags[j])),
    )
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for _, i, j in weighted:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
    roots = sorted({find(i) for i in range(k)})
    for extra in roots[1:]:
        edges.append((roots[0], extra))
        parent[find(extra)] = find(roots[0])
    return TreeDecomposition(tuple(bags), tuple(edges))


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    td = clique_tree(_fill_from_order(g, order))
    assert td.is_valid(g)
    return td


def _exact_order(g: Graph, k: int, budget: int) -> Optional[list[int]]:
    """Elimination order of width <= k, or None when provably impossible.

    Memoizes failed remaining-vertex sets (the filled graph only depends on
    the eliminated set).  Simplicial vertices of degree <= k are eliminated
    without branching.  Raises SearchBudgetExceeded past the node budget.
    """
    failed: set[frozenset[int]] = set()
    nodes = [budget]

    def rec(adj: dict[int, set[int]]) -> Optional[list[int]]:
        if len(adj) <= k + 1:
            return sorted(adj)
        key = frozenset(adj)
        if key in failed:
            return None
        nodes[0] -= 1
        if nodes[0] < 0:
            raise SearchBudgetExceeded(f"width-{k} search budget exhausted")
        for v in sorted(adj):
            if len(adj[v]) <= k and _simplicial(adj, v):
                rest = rec(_after(adj, v))
                if rest is not None:
                    return [v] + rest
                failed.add(key)
                return None
        candidates = sorted((v for v in adj if len(adj[v]) <= k),
                            key=lambda v: (_fill_count_dict(adj, v),
                                           len(adj[v]), v))
        for v in candidates:
            rest = rec(_after(adj, v))
            if rest is not None:
                return [v] + rest
        failed.add(key)
        return None

    return rec({v: set(g.adj[v]) for v in g.vertices()})


def _simplicial(adj: dict[int, set[int]], v: int) -> bool:
    nbrs = list(adj[v])
    return all(b in adj[a] for i, a in enumerate(nbrs) for b in nbrs[i + 1:])


def _fill_count_dict(adj: dict[int, set[int]], v: int) -> int:
    nbrs = list(adj[v])
    return sum(1 for i, a in enumerate(nbrs) for b in nbrs[i + 1:]
               if b not in adj[a])


def _after(adj: dict[int, set[int]], v: int) -> dict[int, set[int]]:
    out = {u: set(nb) for u, nb in adj.items() if u != v}
    nbrs = list(adj[v])
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            out[a].add(b)
            out[b].add(a)
    for a in nbrs:
        out[a].discard(v)
    return out


DEFAULT_EXACT_BUDGET = 200_000

SkeletonTwResult = Union[TreeDecomposition, TreewidthReject]


def skeleton_tree_decomposition(f: Graph,
                                exact_budget: int = DEFAULT_EXACT_BUDGET
                                ) -> SkeletonTwResult:
    """Width <= 5 tree decomposition of a triangle-free graph, or a
    TreewidthReject proving width > 5 (so f is not a triangle-free
    odd-signable skeleton).

    Raises ValueError if f has a triangle and SearchBudgetExceeded when the
    exact fallback runs out of budget.
    """
    from .oracles import find_forbidden_induced

    if find_forbidden_induced(f, "triangle") is not None:
        raise ValueError("input has a triangle")
    if f.n == 0:
        return TreeDecomposition((), ())
    order = _min_fill_order(f)
    if _order_width(f, order) <= 5:
        return decomposition_from_order(f, order)
    exact = _exact_order(f, 5, exact_budget)
    if exact is None:
        return TreewidthReject(5)
    td = decomposition_from_order(f, exact)
    assert td.width <= 5
    return td


@dataclass(frozen=True)
class Ear:
    """One ear addition: path runs x, interiors..., z; apex is the common
    neighbor y; apex_links are the interiors adjacent to the apex; host is
    the hole the ear was attached to, in cycle order."""
    path: tuple[int, ...]
    apex: int
    apex_links: tuple[int, ...]
    host: tuple[int, ...]

    @property
    def attachments(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.path[1:-1]


@dataclass(frozen=True)
class EarSequence:
    """A base hole plus good ear additions; determines the skeleton."""
    base: tuple[int, ...]
    ears: tuple[Ear, ...]

    def vertex_count(self) -> int:
        count = len(self.base)
        for ear in self.ears:
            count += len(ear.interior)
        return count


def skeleton_from_ears(es: EarSequence) -> Graph:
    """The graph built by the base hole and the recorded ear additions."""
    edges = _ear_edges(es)
    return Graph(es.vertex_count(), edges)


def _ear_edges(es: EarSequence) -> list[tuple[int, int]]:
    k = len(es.base)
    edges = [(es.base[i], es.base[(i + 1) % k]) for i in range(k)]
    for ear in es.ears:
        edges.extend(zip(ear.path, ear.path[1:]))
        edges.extend((ear.apex, u) for u in ear.apex_links)
    return [(min(u, v), max(u, v)) for u, v in edges]


def triangulation_from_ears(es: EarSequence) -> Graph:
    """The explicit chordal supergraph of the skeleton with clique number
    at most 6.

    Per ear, the attachments and apex are made complete to the ear's
    interior and the attachment chord is added; the first edge of the base
    hole is joined to the rest of the base hole.  Ears must validate as
    good (checked against the intermediate graphs); others are rejected.
    """
    from .construct import validate_good_ear

    current = Graph(len(es.base),
                    [(es.base[i], es.base[(i + 1) % len(es.base)])
                     for i in range(len(es.base))])
    for ear in es.ears:
        ok, reason = validate_good_ear(current, ear.host, ear.path,
                                       ear.apex, ear.apex_links)
        if not ok:
            raise ValueError(f"ear {ear.path} is not good: {reason}")
        edges = current.edges()
        edges.extend(zip(ear.path, ear.path[1:]))
        edges.extend((ear.apex, u) for u in ear.apex_links)
        current = Graph(max(current.n, max(ear.path) + 1), edges)
    extra: set[tuple[int, int]] = set()

    def add(u: int, v: int):
        if u != v and not current.has_edge(u, v):
            extra.add((min(u, v), max(u, v)))

    for ear in es.ears:
        x, z = ear.attachments
        add(x, z)
        for w in ear.interior:
            for s in (x, ear.apex, z):
                add(s, w)
    u, v = es.base[0], es.base[1]
    for w in es.base[2:]:
        add(u, w)
        add(v, w)
    tri = Graph(current.n, current.edges() + sorted(extra))
    adj = [set(tri.adj[w]) for w in tri.vertices()]
    assert is_chordal(adj), "ear triangulation must be chordal"
    return tri


def chordal_clique_number(g: Graph) -> int:
    """omega of a chordal graph via a perfect elimination order."""
    adj = [set(g.adj[v]) for v in g.vertices()]
    order = mcs_order(adj)
    position = {v: i for i, v in enumerate(order)}
    best = 1 if g.n else 0
    for v in order:
        later = [u for u in adj[v] if position[u] > position[v]]
        best = max(best, len(later) + 1)
    return best


def lift_tree_decomposition(td: TreeDecomposition,
                            sd: SkeletonDecomposition) -> TreeDecomposition:
    """Substitute each skeleton vertex's clique into its bags and append
    the universal clique to every bag; valid for the atom with width at
    most 6*omega(atom) - 1."""
    if td.bags and max(max(b) for b in td.bags if b) >= sd.skeleton.n:
        raise ValueError("decomposition does not match the skeleton")
    bags = []
    for bag in td.bags:
        lifted: list[int] = list(sd.universal)
        for v in bag:
            lifted.extend(sd.classes[v])
        bags.append(vertex_set(lifted))
    return TreeDecomposition(tuple(bags), td.edges)


@dataclass(frozen=True)
class NiceNode:
    kind: str                     # leaf | introduce | forget | join
    bag: tuple[int, ...]
    vertex: Optional[int]         # introduced/forgotten vertex
    children: tuple[int, ...]


@dataclass(frozen=True)
class NiceDecomposition:
    nodes: tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max((len(n.bag) for n in self.nodes), default=0) - 1

    def as_tree_decomposition(self) -> TreeDecomposition:
        bags = tuple(n.bag for n in self.nodes)
        edges = tuple((i, c) for i, n in enumerate(self.nodes)
                      for c in n.children)
        return TreeDecomposition(bags, edges)


def nice_decomposition(td: TreeDecomposition) -> NiceDecomposition:
    """Rooted nice form: every node is a leaf, introduce, forget or join;
    width is preserved and the root bag is empty."""
    if not td.bags:
        return NiceDecomposition((NiceNode("leaf", (), None, ()),), 0)
    k = len(td.bags)
    nbrs: list[list[int]] = [[] for _ in range(k)]
    for a, b in td.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    nodes: list[NiceNode] = []

    def emit(kind: str, bag, vertex=None, children=()) -> int:
        nodes.append(NiceNode(kind, vertex_set(bag), vertex,
                              tuple(children)))
        return len(nodes) - 1

    def chain_up(idx: int, have: tuple[int, ...], want: tuple[int, ...]) -> int:
        bag = set(have)
        for v in sorted(set(have) - set(want), reverse=True):
            bag.discard(v)
            idx = emit("forget", bag, v, (idx,))
        for v in sorted(set(want) - set(have)):
            bag.add(v)
            idx = emit("introduce", bag, v, (idx,))
        return idx

    def build(b: int, parent: Optional[int]) -> int:
        bag = td.bags[b]
        kid_idx = []
        for c in nbrs[b]:
            if c != parent:
                sub = build(c, b)
                kid_idx.append(chain_up(sub, td.bags[c], bag))
        if not kid_idx:
            leaf = emit("leaf", ())
            return chain_up(leaf, (), bag)
        while len(kid_idx) > 1:
            left = kid_idx.pop(0)
            right = kid_idx.pop(0)
            kid_idx.insert(0, emit("join", bag, None, (left, right)))
        return kid_idx[0]

    top = build(0, None)
    top = chain_up(top, td.bags[0], ())
    return NiceDecomposition(tuple(nodes), top)
