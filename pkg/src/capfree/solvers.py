"""Coloring and maximum weight stable set over the decomposition stack.

Per-atom answers come from dynamic programming over the lifted width-bounded
tree decompositions; clique cutsets combine atom answers to the whole graph
(color permutation for coloring, Tarjan's reweighting for stable sets).
Atoms without usable structure fall back to the brute-force oracles under a
size guard; beyond the guard the instance is reported unsupported, never
answered wrongly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .decomposition import (DecompositionNode, DecompositionTree,
                            clique_cutset_tree)
from .graphs import Graph, induced_subgraph, vertex_set
from .oracles import InstanceTooLargeError, brute_solve
from .treewidth import (NiceDecomposition, SearchBudgetExceeded,
                        TreeDecomposition, TreewidthReject,
                        lift_tree_decomposition, nice_decomposition,
                        skeleton_tree_decomposition)
from .twins import (COMPLETE_ATOM, SkeletonDecomposition, SkeletonReject,
                    clique_number_via_skeleton, extract_skeleton)


class UnsupportedInstanceError(RuntimeError):
    """The instance is outside the class and too large for brute force."""


def ceil_three_halves(omega: int) -> int:
    return (3 * omega + 1) // 2


def greedy_color(g: Graph) -> list[int]:
    """Greedy coloring along the reverse degeneracy order.

    The order is built backward by repeatedly taking a minimum-degree
    vertex of the remaining graph (ties to the smaller id); coloring then
    assigns each vertex the smallest color unused by its earlier neighbors.
    """
    degree = [g.degree(v) for v in g.vertices()]
    alive = set(g.vertices())
    peel = []
    while alive:
        v = min(alive, key=lambda u: (degree[u], u))
        peel.append(v)
        alive.discard(v)
        for u in g.adj[v]:
            if u in alive:
                degree[u] -= 1
    colors = [0] * g.n
    for v in reversed(peel):
        taken = {colors[u] for u in g.adj[v] if colors[u]}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return colors


def is_proper_coloring(g: Graph, colors: Sequence[int],
                       q: Optional[int] = None) -> bool:
    if len(colors) != g.n or any(c < 1 for c in colors):
        return False
    if q is not None and any(c > q for c in colors):
        return False
    return all(colors[u] != colors[v] for u, v in g.edges())


def _q_color_nice(graph: Graph, nd: NiceDecomposition, q: int
                  ) -> Optional[list[int]]:
    """q-coloring DP; states are proper color assignments per bag."""
    tables: list[dict] = [dict() for _ in nd.nodes]
    for idx, node in enumerate(nd.nodes):
        if node.kind == "leaf":
            tables[idx] = {(): None}
        elif node.kind == "introduce":
            child = tables[node.children[0]]
            pos = node.bag.index(node.vertex)
            nbr = [i for i, u in enumerate(node.bag)
                   if u != node.vertex and graph.has_edge(u, node.vertex)]
            table = {}
            for key in child:
                for c in range(1, q + 1):
                    new = key[:pos] + (c,) + key[pos:]
                    if all(new[i] != c for i in nbr):
                        table[new] = key
            tables[idx] = table
        elif node.kind == "forget":
            child_node = nd.nodes[node.children[0]]
            pos = child_node.bag.index(node.vertex)
            table = {}
            for key in tables[node.children[0]]:
                short = key[:pos] + key[pos + 1:]
                if short not in table:
                    table[short] = key
            tables[idx] = table
        else:  # join
            left = tables[node.children[0]]
            right = tables[node.children[1]]
            tables[idx] = {key: None for key in left if key in right}
        if not tables[idx]:
            return None
    if () not in tables[nd.root]:
        return None
    colors = [0] * graph.n

    def descend(idx: int, key):
        node = nd.nodes[idx]
        if node.kind == "leaf":
            return
        if node.kind == "introduce":
            colors[node.vertex] = key[node.bag.index(node.vertex)]
            descend(node.children[0], tables[idx][key])
        elif node.kind == "forget":
            descend(node.children[0], tables[idx][key])
        else:
            descend(node.children[0], key)
            descend(node.children[1], key)

    descend(nd.root, ())
    assert is_proper_coloring(graph, colors, q)
    return colors


def q_color(atom: Graph, td: TreeDecomposition, q: int
            ) -> Optional[list[int]]:
    """A proper q-coloring of the atom via DP over the decomposition's nice
    form, or None when no q-coloring exists."""
    if q < 1:
        raise ValueError("q must be at least 1")
    if not td.is_valid(atom):
        raise ValueError("decomposition is not valid for the graph")
    return _q_color_nice(atom, nice_decomposition(td), q)


def combine_colorings(tree: DecompositionTree,
                      atom_colorings: Sequence[dict[int, int]],
                      q: int) -> list[int]:
    """Merge per-atom colorings into a proper coloring of the whole graph.

    atom_colorings aligns with tree.leaves().  At every internal node the
    left side's colors are permuted to agree with the right side on the
    cutset clique (whose colors are pairwise distinct, so a permutation
    always exists).
    """
    leaves = tree.leaves()
    if len(atom_colorings) != len(leaves):
        raise ValueError("need one coloring per decomposition leaf")
    for leaf, coloring in zip(leaves, atom_colorings):
        if set(coloring) != set(leaf.vertices):
            raise ValueError("coloring does not match its atom")
        if any(not 1 <= c <= q for c in coloring.values()):
            raise ValueError(f"atom coloring exceeds {q} colors")
    supply = iter(atom_colorings)

    def walk(node: DecompositionNode) -> dict[int, int]:
        if node.is_leaf:
            return dict(next(supply))
        left = walk(node.left)
        right = walk(node.right)
        perm: dict[int, int] = {}
        for v in node.cutset:
            perm[left[v]] = right[v]
        free = iter(c for c in range(1, q + 1) if c not in perm.values())
        for c in range(1, q + 1):
            if c not in perm:
                perm[c] = next(free)
        merged = {v: perm[c] for v, c in left.items()}
        merged.update(right)
        return merged

    total = walk(tree.root)
    colors = [total[v] for v in tree.graph.vertices()]
    assert is_proper_coloring(tree.graph, colors, q)
    return colors


@dataclass
class AtomStructure:
    """Everything the solvers need about one decomposition leaf."""
    vertices: tuple[int, ...]
    graph: Graph
    back: tuple[int, ...]
    complete: bool
    sd: Optional[SkeletonDecomposition] = None
    skeleton_td: Optional[TreeDecomposition] = None
    omega: int = 0


def atom_structure(root: Graph, leaf_vertices: tuple[int, ...],
                   exact_budget: Optional[int] = None) -> AtomStructure:
    """Extract the skeleton plus its width-5 decomposition; falls back to
    an unstructured record when the atom lacks the class shape."""
    atom, back = induced_subgraph(root, leaf_vertices)
    extracted = extract_skeleton(atom)
    if extracted == COMPLETE_ATOM:
        return AtomStructure(leaf_vertices, atom, back, True, omega=atom.n)
    if isinstance(extracted, SkeletonReject):
        return AtomStructure(leaf_vertices, atom, back, False)
    sd = extracted
    kwargs = {} if exact_budget is None else {"exact_budget": exact_budget}
    try:
        td = skeleton_tree_decomposition(sd.skeleton, **kwargs)
    except SearchBudgetExceeded:
        return AtomStructure(leaf_vertices, atom, back, False)
    if isinstance(td, TreewidthReject):
        return AtomStructure(leaf_vertices, atom, back, False)
    return AtomStructure(leaf_vertices, atom, back, False, sd, td,
                         clique_number_via_skeleton(sd))


def chromatic_number(g: Graph, brute_guard: Optional[int] = None,
                     exact_budget: Optional[int] = None
                     ) -> tuple[int, list[int]]:
    """Exact chromatic number with a proper coloring.

    Per atom: the minimum q in [omega, ceil(3/2 omega)] for which the
    q-coloring DP over the lifted decomposition succeeds.  Atoms without
    class structure, or whose search range is exhausted (which proves the
    atom is outside the class), use the brute oracle under the guard.
    DP state counts grow exponentially with the clique number; intended
    for desk-scale instances.
    """
    if g.n == 0:
        return 0, []
    tree = clique_cutset_tree(g)
    per_leaf: list[dict[int, int]] = []
    chi = 1
    for leaf in tree.leaves():
        st = atom_structure(g, leaf.vertices, exact_budget)
        colors = None
        q_atom = 0
        if st.complete:
            colors = list(range(1, st.graph.n + 1))
            q_atom = max(st.graph.n, 1)
        elif st.sd is not None:
            lifted = lift_tree_decomposition(st.skeleton_td, st.sd)
            assert lifted.is_valid(st.graph)
            nd = nice_decomposition(lifted)
            for q_atom in range(st.omega, ceil_three_halves(st.omega) + 1):
                colors = _q_color_nice(st.graph, nd, q_atom)
                if colors is not None:
                    break
        if colors is None:
            result = _brute_or_unsupported(st.graph, "chromatic", brute_guard)
            q_atom, colors = result.value, list(result.witness)
        chi = max(chi, q_atom)
        per_leaf.append({st.back[v]: colors[v] for v in st.graph.vertices()})
    coloring = combine_colorings(tree, per_leaf, chi)
    return chi, coloring


def _brute_or_unsupported(g: Graph, problem: str, guard: Optional[int]):
    try:
        return brute_solve(g, problem, guard)
    except InstanceTooLargeError as exc:
        raise UnsupportedInstanceError(
            f"atom is outside the class and beyond the {problem} "
            f"brute-force guard ({exc})") from exc


def q_color_graph(g: Graph, q: int, brute_guard: Optional[int] = None,
                  exact_budget: Optional[int] = None
                  ) -> Optional[list[int]]:
    """A proper q-coloring of the whole graph, or None.

    The graph is q-colorable iff every atom is; atom colorings are merged
    along the cutsets."""
    if q < 1:
        raise ValueError("q must be at least 1")
    if g.n == 0:
        return []
    tree = clique_cutset_tree(g)
    per_leaf = []
    for leaf in tree.leaves():
        st = atom_structure(g, leaf.vertices, exact_budget)
        if st.complete:
            if st.graph.n > q:
                return None
            colors = list(range(1, st.graph.n + 1))
        elif st.sd is not None:
            lifted = lift_tree_decomposition(st.skeleton_td, st.sd)
            colors = _q_color_nice(st.graph, nice_decomposition(lifted), q)
            if colors is None:
                return None
        else:
            result = _brute_or_unsupported(st.graph, "chromatic", brute_guard)
            if result.value > q:
                return None
            colors = list(result.witness)
        per_leaf.append({st.back[v]: colors[v] for v in st.graph.vertices()})
    return combine_colorings(tree, per_leaf, q)


def clique_number(g: Graph, brute_guard: Optional[int] = None,
                  exact_budget: Optional[int] = None
                  ) -> tuple[int, tuple[int, ...]]:
    """omega with a witness clique, through the skeleton structure.

    Complete atoms contribute themselves; structured atoms contribute the
    universal clique plus the heaviest class or adjacent class pair; atoms
    without structure fall back to the brute oracle under the guard."""
    best = 0
    witness: tuple[int, ...] = ()
    for leaf in clique_cutset_tree(g).leaves():
        st = atom_structure(g, leaf.vertices, exact_budget)
        if st.complete:
            value, local = st.graph.n, tuple(st.graph.vertices())
        elif st.sd is not None:
            value = st.omega
            local = _skeleton_clique_witness(st.sd)
        else:
            result = _brute_or_unsupported(st.graph, "max-clique",
                                           brute_guard)
            value, local = result.value, result.witness
        assert st.graph.is_clique(local) and len(local) == value
        if value > best:
            best = value
            witness = vertex_set(st.back[v] for v in local)
    return best, witness


def _skeleton_clique_witness(sd: SkeletonDecomposition) -> tuple[int, ...]:
    top: tuple[int, ...] = max(sd.classes, key=len)
    for u, v in sd.skeleton.edges():
        pair = sd.classes[u] + sd.classes[v]
        if len(pair) > len(top):
            top = pair
    return vertex_set(sd.universal + top)


@dataclass(frozen=True)
class StableSetResult:
    vertices: tuple[int, ...]
    weight: int


def reduce_to_skeleton_weights(atom: Graph, sd: SkeletonDecomposition,
                               weights: Sequence[int]
                               ) -> tuple[Graph, tuple[int, ...]]:
    """The weighted reduction graph F' and its representative map.

    F' is the skeleton plus one universal vertex when the universal clique
    is nonempty.  Each F' vertex carries the maximum weight of its class
    (ties to the minimum vertex id); the maximum stable-set weight of F'
    equals the atom's.
    """
    if atom != sd.atom:
        raise ValueError("skeleton decomposition does not describe the atom")
    reps: list[int] = []
    wts: list[int] = []
    for cls in sd.classes:
        best = min(cls, key=lambda v: -weights[v])
        reps.append(best)
        wts.append(weights[best])
    edges = sd.skeleton.edges()
    n = sd.skeleton.n
    if sd.universal:
        best = min(sd.universal, key=lambda v: -weights[v])
        edges.extend((v, n) for v in range(n))
        reps.append(best)
        wts.append(weights[best])
        n += 1
    return Graph(n, edges, wts), tuple(reps)


def _mwss_nice(graph: Graph, nd: NiceDecomposition, weights: Sequence[int]
               ) -> tuple[int, tuple[int, ...]]:
    """Max weight stable set DP; handles negative weights (the empty set is
    always a candidate)."""
    tables: list[dict] = [dict() for _ in nd.nodes]
    forget_choice: list[dict] = [dict() for _ in nd.nodes]
    for idx, node in enumerate(nd.nodes):
        if node.kind == "leaf":
            tables[idx] = {(): 0}
        elif node.kind == "introduce":
            child = tables[node.children[0]]
            pos = node.bag.index(node.vertex)
            nbr = [i for i, u in enumerate(node.bag)
                   if u != node.vertex and graph.has_edge(u, node.vertex)]
            table = {}
            for key, value in child.items():
                out = key[:pos] + (False,) + key[pos:]
                if out not in table or value > table[out]:
                    table[out] = value
                taken = key[:pos] + (True,) + key[pos:]
                if not any(taken[i] for i in nbr):
                    cand = value + weights[node.vertex]
                    if taken not in table or cand > table[taken]:
                        table[taken] = cand
            tables[idx] = table
        elif node.kind == "forget":
            child_node = nd.nodes[node.children[0]]
            pos = child_node.bag.index(node.vertex)
            table = {}
            for key, value in tables[node.children[0]].items():
                short = key[:pos] + key[pos + 1:]
                if short not in table or value > table[short]:
                    table[short] = value
                    forget_choice[idx][short] = key
            tables[idx] = table
        else:  # join
            left = tables[node.children[0]]
            right = tables[node.children[1]]
            table = {}
            for key, value in left.items():
                if key in right:
                    overlap = sum(weights[u] for u, chosen
                                  in zip(node.bag, key) if chosen)
                    table[key] = value + right[key] - overlap
            tables[idx] = table
    best_value = tables[nd.root][()]
    chosen: set[int] = set()

    def descend(idx: int, key):
        node = nd.nodes[idx]
        if node.kind == "leaf":
            return
        if node.kind == "introduce":
            pos = node.bag.index(node.vertex)
            if key[pos]:
                chosen.add(node.vertex)
            descend(node.children[0], key[:pos] + key[pos + 1:])
        elif node.kind == "forget":
            descend(node.children[0], forget_choice[idx][key])
        else:
            descend(node.children[0], key)
            descend(node.children[1], key)

    descend(nd.root, ())
    result = vertex_set(chosen)
    assert graph.is_stable(result)
    assert sum(weights[v] for v in result) == best_value
    return best_value, result


class _AtomSolver:
    """Stable-set subproblem solver for one atom.

    Structured atoms answer queries by restricting the skeleton's width-5
    decomposition to the surviving vertices, reducing weights onto F', and
    running the stable-set DP (width at most 6); unstructured atoms fall
    back to brute force under the guard.  Queries delete a vertex set X
    (the cutset, or a closed neighborhood) and take current weights.
    """

    def __init__(self, root: Graph, leaf_vertices: tuple[int, ...],
                 brute_guard: Optional[int],
                 exact_budget: Optional[int] = None):
        self.st = atom_structure(root, leaf_vertices, exact_budget)
        self.brute_guard = brute_guard
        self.local_of = {r: i for i, r in enumerate(self.st.back)}

    def solve(self, deleted_roots: set[int], weights: Sequence[int]
              ) -> tuple[int, tuple[int, ...]]:
        """Best stable set of atom minus the deleted vertices; returns
        (weight, root-id vertex tuple)."""
        st = self.st
        deleted = {self.local_of[r] for r in deleted_roots
                   if r in self.local_of}
        survivors = [v for v in st.graph.vertices() if v not in deleted]
        if not survivors:
            return 0, ()
        local_w = {v: weights[st.back[v]] for v in survivors}
        if st.complete:
            best = max(survivors, key=lambda v: (local_w[v], -v))
            if local_w[best] <= 0:
                return 0, ()
            return local_w[best], (st.back[best],)
        if st.sd is None:
            sub, sub_back = induced_subgraph(st.graph, survivors)
            weighted = sub.with_weights([local_w[v] for v in survivors])
            res = _brute_or_unsupported(weighted, "mwss", self.brute_guard)
            return res.value, vertex_set(st.back[sub_back[v]]
                                         for v in res.witness)
        return self._solve_structured(deleted, local_w)

    def _solve_structured(self, deleted: set[int], local_w: dict[int, int]
                          ) -> tuple[int, tuple[int, ...]]:
        sd = self.st.sd
        surviving_sk = [i for i, cls in enumerate(sd.classes)
                        if any(v not in deleted for v in cls)]
        universal_left = [v for v in sd.universal if v not in deleted]
        self._assert_restriction(sd, deleted, universal_left)
        reps: list[int] = []
        wts: list[int] = []
        for i in surviving_sk:
            alive = [v for v in sd.classes[i] if v not in deleted]
            best = min(alive, key=lambda v: -local_w[v])
            reps.append(best)
            wts.append(local_w[best])
        new_id = {sk: j for j, sk in enumerate(surviving_sk)}
        edges = [(new_id[u], new_id[v]) for u, v in sd.skeleton.edges()
                 if u in new_id and v in new_id]
        n = len(surviving_sk)
        bags = [vertex_set(new_id[v] for v in bag if v in new_id)
                for bag in self.st.skeleton_td.bags]
        if universal_left:
            best = min(universal_left, key=lambda v: -local_w[v])
            edges.extend((j, n) for j in range(n))
            reps.append(best)
            wts.append(local_w[best])
            bags = [bag + (n,) for bag in bags]
            n += 1
        reduced = Graph(n, edges, wts)
        td = TreeDecomposition(tuple(bags), self.st.skeleton_td.edges)
        assert td.is_valid(reduced), "restricted decomposition must stay valid"
        if not surviving_sk:
            best = reps[0]
            if wts[0] <= 0:
                return 0, ()
            return wts[0], (self.st.back[best],)
        value, picked = _mwss_nice(reduced, nice_decomposition(td), wts)
        return value, vertex_set(self.st.back[reps[j]] for j in picked)

    def _assert_restriction(self, sd, deleted, universal_left):
        """Restriction soundness: surviving class members stay true twins
        and surviving universal vertices stay universal."""
        atom = self.st.graph
        alive_mask = 0
        for v in atom.vertices():
            if v not in deleted:
                alive_mask |= 1 << v
        for v in universal_left:
            assert (atom.mask(v) | 1 << v) & alive_mask == alive_mask
        for cls in sd.classes:
            alive = [v for v in cls if v not in deleted]
            masks = {(atom.mask(v) | 1 << v) & alive_mask for v in alive}
            assert len(masks) <= 1, "restricted class is not a twin class"


def mwss(g: Graph, weights: Optional[Sequence[int]] = None,
         brute_guard: Optional[int] = None,
         exact_budget: Optional[int] = None) -> StableSetResult:
    """Maximum weight stable set via top-down clique-cutset recursion.

    At each internal node with cutset S and atom side A: solve A minus S
    and A minus each closed neighborhood N[v] (v in S), reweight S by
    w'(v) = w(v) + w(I_v) - w(I'), recurse on the other side, and combine.
    The reweighting never increases a weight (asserted).  Empty cutsets
    (disconnected splits) just take the union of both sides.
    """
    base = list(weights) if weights is not None else list(g.weights)
    if len(base) != g.n:
        raise ValueError("weights length must equal vertex count")
    tree = clique_cutset_tree(g)
    solvers: dict[tuple[int, ...], _AtomSolver] = {}

    def atom_solver(leaf: DecompositionNode) -> _AtomSolver:
        if leaf.vertices not in solvers:
            solvers[leaf.vertices] = _AtomSolver(g, leaf.vertices,
                                                 brute_guard, exact_budget)
        return solvers[leaf.vertices]

    def solve(node: DecompositionNode, w: list[int]) -> tuple[int, set[int]]:
        if node.is_leaf:
            value, picked = atom_solver(node).solve(set(), w)
            return value, set(picked)
        cut = node.cutset
        if not cut:
            lv, lset = solve(node.left, w)
            rv, rset = solve(node.right, w)
            return lv + rv, lset | rset
        assert node.left.is_leaf, "nonempty cutsets split off an atom"
        solver = atom_solver(node.left)
        base_value, base_set = solver.solve(set(cut), w)
        sub_solutions = {}
        w2 = list(w)
        for v in cut:
            closed = {v} | {u for u in g.adj[v]}
            value_v, set_v = solver.solve(closed, w)
            sub_solutions[v] = (value_v, set_v)
            w2[v] = w[v] + value_v - base_value
            assert w2[v] <= w[v], "reweighting must not increase a weight"
        rv, rset = solve(node.right, w2)
        inside = rset & set(cut)
        if len(inside) == 1:
            v = inside.pop()
            value_v, set_v = sub_solutions[v]
            merged = set(set_v) | rset
            total = value_v + rv - w2[v] + w[v]
        else:
            merged = set(base_set) | rset
            total = base_value + rv
        return total, merged

    value, picked = solve(tree.root, base)
    result = vertex_set(picked)
    assert g.is_stable(result), "result must be a stable set"
    achieved = sum(base[v] for v in result)
    assert achieved == value, "weight bookkeeping mismatch"
    return StableSetResult(result, value)
