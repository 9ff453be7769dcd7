"""Clique-cutset decomposition into a binary tree with atom leaves.

The cutset search follows Tarjan's scheme: compute a minimal elimination
ordering (LEX-M), then test each vertex's later-neighborhood in the fill
graph.  A candidate that is a clique and separates the current graph is a
clique cutset; if no candidate works, the graph has none.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from .graphs import Graph, induced_subgraph, vertex_set


def _lex_m(g: Graph) -> tuple[list[int], list[set[int]]]:
    """Minimal elimination ordering and its fill graph.

    Returns (order, fill_adj) where order lists vertices in elimination
    order and fill_adj is the adjacency of the minimal triangulation.
    """
    n = g.n
    label: list[tuple[int, ...]] = [()] * n
    numbered = [False] * n
    order = [0] * n
    fill = [set(g.adj[v]) for v in range(n)]
    for i in range(n, 0, -1):
        v = max((u for u in range(n) if not numbered[u]),
                key=lambda u: (label[u], -u))
        numbered[v] = True
        order[i - 1] = v
        for u in _lexm_reach(g, v, numbered, label):
            fill[u].add(v)
            fill[v].add(u)
            label[u] = label[u] + (i,)
    return order, fill


def _lexm_reach(g: Graph, v: int, numbered: list[bool],
                label: list[tuple[int, ...]]) -> list[int]:
    """Unnumbered u reachable from v through strictly smaller-labelled,
    unnumbered interior vertices (minimax search over label ranks)."""
    ranks: dict[int, int] = {}
    distinct = sorted({label[u] for u in range(g.n) if not numbered[u]})
    rank_of = {lab: r for r, lab in enumerate(distinct)}
    for u in range(g.n):
        if not numbered[u]:
            ranks[u] = rank_of[label[u]]
    bottleneck: dict[int, int] = {}
    heap: list[tuple[int, int]] = []
    for u in g.adj[v]:
        if u in ranks:
            bottleneck[u] = -1
            heapq.heappush(heap, (-1, u))
    while heap:
        b, u = heapq.heappop(heap)
        if b != bottleneck.get(u):
            continue
        through = max(b, ranks[u])
        for z in g.adj[u]:
            if z in ranks and through < bottleneck.get(z, len(distinct) + 1):
                bottleneck[z] = through
                heapq.heappush(heap, (through, z))
    return [u for u, b in sorted(bottleneck.items()) if b < ranks[u]]


def _component_of(g: Graph, start: int, excluded: set[int]) -> set[int]:
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if u not in comp and u not in excluded:
                comp.add(u)
                stack.append(u)
    return comp


def _components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for v in g.vertices():
        if v not in seen:
            comp = sorted(_component_of(g, v, set()))
            seen.update(comp)
            out.append(comp)
    return out


def _is_minimal_separator(g: Graph, sep: set[int], alive: set[int]) -> bool:
    """At least two components of g[alive] minus sep see all of sep."""
    full = 0
    seen: set[int] = set()
    for v in alive:
        if v in sep or v in seen:
            continue
        comp = _component_of_alive(g, v, sep, alive)
        seen |= comp
        nbhd = set()
        for u in comp:
            nbhd.update(w for w in g.adj[u] if w in sep)
        if nbhd == sep:
            full += 1
            if full >= 2:
                return True
    return False


def find_clique_cutset(g: Graph
                       ) -> Optional[tuple[tuple[int, ...],
                                           tuple[tuple[int, ...],
                                                 tuple[int, ...]]]]:
    """A clique cutset with the two-sided split, or None if no cutset exists.

    Returns (K, (H1, H2)) with H1, H2 the nonempty sides of G minus K.
    Disconnected graphs yield K = () and the component split.  Candidates
    (later fill-neighborhoods under a minimal elimination ordering) are
    scanned in ascending vertex order; minimal separators are preferred so
    the cutset is as small as the structure allows.
    """
    comps = _components(g)
    if len(comps) > 1:
        return (), (tuple(comps[0]),
                    vertex_set(v for c in comps[1:] for v in c))
    if g.n <= 2:
        return None
    order, fill = _lex_m(g)
    position = {v: i for i, v in enumerate(order)}
    everything = set(g.vertices())
    fallback = None
    for v in range(g.n):
        cand = vertex_set(u for u in fill[v] if position[u] > position[v])
        if not g.is_clique(cand):
            continue
        side = _component_of(g, v, set(cand))
        if len(side) + len(cand) == g.n:
            continue
        rest = vertex_set(everything - side - set(cand))
        if _is_minimal_separator(g, set(cand), everything):
            return cand, (vertex_set(side), rest)
        if fallback is None:
            fallback = cand, (vertex_set(side), rest)
    return fallback


@dataclass(frozen=True)
class DecompositionNode:
    """Node of the decomposition tree over root-graph vertex ids."""
    vertices: tuple[int, ...]
    cutset: Optional[tuple[int, ...]] = None
    left: Optional["DecompositionNode"] = None
    right: Optional["DecompositionNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.cutset is None


@dataclass(frozen=True)
class DecompositionTree:
    graph: Graph
    root: DecompositionNode

    def leaves(self) -> list[DecompositionNode]:
        """Leaves in left-to-right order."""
        out: list[DecompositionNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node)
            else:
                stack.extend((node.right, node.left))
        return out

    def atoms(self) -> list[tuple[int, ...]]:
        return [leaf.vertices for leaf in self.leaves()]

    def internal_nodes(self) -> list[DecompositionNode]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if not node.is_leaf:
                out.append(node)
                stack.extend((node.right, node.left))
        return out


def clique_cutset_tree(g: Graph) -> DecompositionTree:
    """Decompose g; every internal node splits off one atom as its left
    child, so the tree is a caterpillar with at most n-1 leaves on
    connected inputs."""
    return DecompositionTree(g, _build(g, vertex_set(g.vertices())))


def _build(root: Graph, vs: tuple[int, ...]) -> DecompositionNode:
    sub, back = induced_subgraph(root, vs)
    comps = _components(sub)
    if len(comps) > 1:
        left = vertex_set(back[v] for v in comps[0])
        rest = vertex_set(back[v] for c in comps[1:] for v in c)
        return DecompositionNode(vs, (), _build(root, left),
                                 _build(root, rest))
    pieces = _tarjan_pieces(sub)
    node = DecompositionNode(vertex_set(back[v] for v in pieces[-1][1]))
    for cutset, atom in reversed(pieces[:-1]):
        atom_vs = vertex_set(back[v] for v in atom)
        node = DecompositionNode(
            vertex_set(set(atom_vs) | set(node.vertices)),
            vertex_set(back[v] for v in cutset),
            DecompositionNode(atom_vs), node)
    return node


def _tarjan_pieces(g: Graph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Scan a connected graph in minimal elimination order, splitting off an
    atom at every step; the final piece is the last atom.

    A candidate later-fill-neighborhood is used only when it is a clique
    and a minimal separator of the current graph (two full components);
    this keeps the leaves exactly the maximal cutset-free subgraphs.
    Returns [(cutset, atom), ..., ((), final_atom)].
    """
    order, fill = _lex_m(g)
    position = {v: i for i, v in enumerate(order)}
    alive = set(g.vertices())
    pieces: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for v in order:
        if v not in alive:
            continue
        cand = [u for u in fill[v] if position[u] > position[v]]
        if any(u not in alive for u in cand) or not g.is_clique(cand):
            continue
        side = _component_of_alive(g, v, set(cand), alive)
        if len(side) + len(cand) == len(alive):
            continue
        if not _is_minimal_separator(g, set(cand), alive):
            continue
        pieces.append((vertex_set(cand), vertex_set(side | set(cand))))
        alive -= side
    pieces.append(((), vertex_set(alive)))
    return pieces


def _component_of_alive(g: Graph, start: int, excluded: set[int],
                        alive: set[int]) -> set[int]:
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if u in alive and u not in comp and u not in excluded:
                comp.add(u)
                stack.append(u)
    return comp


def tree_to_dot(tree: DecompositionTree) -> str:
    """DOT rendering: internal nodes show the cutset, leaves the atom size."""
    lines = ["graph decomposition {"]
    counter = [0]

    def walk(node: DecompositionNode) -> int:
        my_id = counter[0]
        counter[0] += 1
        if node.is_leaf:
            lines.append(f'  n{my_id} [label="atom |{len(node.vertices)}|"'
                         f", shape=box];")
        else:
            cut = ",".join(str(v + 1) for v in node.cutset) or "empty"
            lines.append(f'  n{my_id} [label="cutset {{{cut}}}"];')
            for child in (node.left, node.right):
                child_id = walk(child)
                lines.append(f"  n{my_id} -- n{child_id};")
        return my_id

    walk(tree.root)
    lines.append("}")
    return "\n".join(lines) + "\n"
