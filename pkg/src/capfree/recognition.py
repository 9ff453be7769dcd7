"""Recognition of (cap, 4-hole)-free odd-signable and (cap, even-hole)-free
graphs with machine-checkable certificates.

Pipeline: 4-hole test, fast cap detection, clique-cutset decomposition,
skeleton extraction per atom, then a desk-scale oracle on each skeleton
(odd-signability when there is no universal clique, even-hole-freeness
otherwise).  Rejections carry a forbidden-structure witness that re-checks
against the input; skeletons beyond the oracle guard yield "undecided"
rather than a wrong answer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .decomposition import DecompositionTree, clique_cutset_tree
from .graphs import Graph, induced_subgraph
from .oracles import (ForbiddenWitness, find_any_forbidden,
                      find_forbidden_induced, odd_signable_signing,
                      verify_witness)
from .twins import (COMPLETE_ATOM, SkeletonDecomposition, SkeletonReject,
                    extract_skeleton)

ACCEPTED = "accepted"
REJECTED = "rejected"
UNDECIDED = "undecided"

DEFAULT_ORACLE_GUARD = 24


def _canonical_cycle(cyc: tuple[int, ...]) -> tuple[int, ...]:
    i = cyc.index(min(cyc))
    rotated = cyc[i:] + cyc[:i]
    if rotated[1] > rotated[-1]:
        rotated = rotated[:1] + rotated[:0:-1]
    return rotated


def detect_4hole(g: Graph) -> Optional[ForbiddenWitness]:
    """An induced 4-cycle, or None; exhaustive over nonadjacent pairs and
    their common neighborhoods."""
    for u in g.vertices():
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                continue
            common = [w for w in g.adj[u] if g.has_edge(v, w)]
            for i, x in enumerate(common):
                for y in common[i + 1:]:
                    if not g.has_edge(x, y):
                        cyc = _canonical_cycle((u, x, v, y))
                        w = ForbiddenWitness("4-hole", cyc, (cyc,))
                        assert verify_witness(g, w)
                        return w
    return None


def detect_cap_fast(g: Graph) -> Optional[ForbiddenWitness]:
    """A cap, or None, in polynomial time.

    For every edge uv and every common neighbor w, search for a u-v path
    after deleting w's other neighbors, all common neighbors of u and v,
    and the edge uv itself.  A shortest such path is induced and closes
    with uv into a hole in which w has exactly the two adjacent neighbors
    u and v.  Breadth-first search with ascending-id tie-breaking makes the
    witness deterministic.
    """
    for u, v in g.edges():
        common = g.mask(u) & g.mask(v)
        if not common:
            continue
        candidates = common
        while candidates:
            low = candidates & -candidates
            candidates ^= low
            w = low.bit_length() - 1
            removed = (g.mask(w) | common) & ~(1 << u) & ~(1 << v)
            path = _bfs_path_avoiding(g, u, v, removed)
            if path is None:
                continue
            cyc = _canonical_cycle(tuple(path))
            witness = ForbiddenWitness("cap", cyc + (w,), (cyc, (w,)))
            assert verify_witness(g, witness), "cap witness failed re-check"
            return witness
    return None


def _bfs_path_avoiding(g: Graph, u: int, v: int, removed: int
                       ) -> Optional[list[int]]:
    """Shortest u..v path avoiding `removed` vertices and the edge uv."""
    parent = {u: -1}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            path = [v]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            return path[::-1]
        options = g.mask(x) & ~removed
        while options:
            low = options & -options
            options ^= low
            y = low.bit_length() - 1
            if x == u and y == v:
                continue
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return None


@dataclass(frozen=True)
class AtomReport:
    """Per-atom certificate piece: the atom's vertices in the input graph,
    and either "complete" or its skeleton decomposition with the oracle
    outcome on the skeleton."""
    vertices: tuple[int, ...]
    complete: bool
    skeleton: Optional[SkeletonDecomposition] = None
    oracle: Optional[str] = None   # "odd-signable" / "even-hole-free"


@dataclass(frozen=True)
class RecognitionVerdict:
    status: str
    target_class: str
    witness: Optional[ForbiddenWitness] = None
    tree: Optional[DecompositionTree] = None
    atoms: tuple[AtomReport, ...] = field(default=())
    detail: str = ""

    @property
    def accepted(self) -> bool:
        return self.status == ACCEPTED


def recognize(g: Graph, target_class: str,
              oracle_guard: int = DEFAULT_ORACLE_GUARD) -> RecognitionVerdict:
    """Decide class membership with a certificate.

    Rejection witnesses re-check against g.  Acceptance certificates carry
    the decomposition tree and each atom's skeleton decomposition, from
    which the input reconstructs.  Skeletons larger than oracle_guard make
    the outcome "undecided" (reported, never wrong).
    """
    if target_class not in ("cap-even-hole-free", "cap-4hole-odd-signable"):
        raise ValueError(f"unknown class {target_class!r}")
    witness = detect_4hole(g)
    if witness is not None:
        return RecognitionVerdict(REJECTED, target_class, witness)
    witness = detect_cap_fast(g)
    if witness is not None:
        return RecognitionVerdict(REJECTED, target_class, witness)
    tree = clique_cutset_tree(g)
    reports: list[AtomReport] = []
    for atom_vs in tree.atoms():
        atom, back = induced_subgraph(g, atom_vs)
        extracted = extract_skeleton(atom)
        if extracted == COMPLETE_ATOM:
            reports.append(AtomReport(atom_vs, True))
            continue
        if isinstance(extracted, SkeletonReject):
            raise RuntimeError(
                "skeleton shape violation on a cap- and 4-hole-free atom "
                f"without clique cutsets; this cannot happen: {extracted}")
        sd = extracted
        if sd.skeleton.n > oracle_guard:
            return RecognitionVerdict(
                UNDECIDED, target_class, tree=tree,
                detail=(f"atom skeleton has {sd.skeleton.n} vertices, "
                        f"oracle guard is {oracle_guard}"))
        to_root = tuple(back[r] for r in sd.representatives)
        if target_class == "cap-even-hole-free" or sd.universal:
            eh = find_forbidden_induced(sd.skeleton, "even-hole")
            if eh is not None:
                witness = _skeleton_reject_witness(g, eh, sd, back,
                                                   to_root, target_class)
                return RecognitionVerdict(REJECTED, target_class, witness,
                                          tree)
            oracle = "even-hole-free"
        else:
            if odd_signable_signing(sd.skeleton) is None:
                found = find_any_forbidden(
                    sd.skeleton, ("even-wheel", "theta", "prism"))
                assert found is not None, \
                    "non-odd-signable skeleton must contain a witness"
                witness = found.relabel(to_root)
                assert verify_witness(g, witness)
                return RecognitionVerdict(REJECTED, target_class, witness,
                                          tree)
            oracle = "odd-signable"
        reports.append(AtomReport(atom_vs, False, sd, oracle))
    return RecognitionVerdict(ACCEPTED, target_class, tree=tree,
                              atoms=tuple(reports))


def _skeleton_reject_witness(g: Graph, eh: ForbiddenWitness,
                             sd: SkeletonDecomposition, back,
                             to_root: tuple[int, ...],
                             target_class: str) -> ForbiddenWitness:
    """Map an even hole of the skeleton to a witness in the input graph.

    For the even-hole-free class the hole itself is the witness; for the
    odd-signable class with a universal clique, the hole plus a universal
    vertex forms an even wheel."""
    hole_in_g = tuple(to_root[v] for v in eh.parts[0])
    if target_class == "cap-even-hole-free":
        witness = ForbiddenWitness("even-hole", hole_in_g, (hole_in_g,))
    else:
        hub = back[sd.universal[0]]
        witness = ForbiddenWitness("even-wheel", hole_in_g + (hub,),
                                   (hole_in_g, (hub,)))
    assert verify_witness(g, witness)
    return witness
