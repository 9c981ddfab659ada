"""Approximate maximum agreement forests on k rooted binary trees.

The working forest starts as the first input tree. Two phases of edge
cutting follow:

1. Triple phase: while some component holds a triple resolved differently by
   an input tree, take a minimal such triple and delete the three candidate
   edges around it.
2. Overlap phase: while two components embed into some input tree with a
   shared node (they are *inseparable* there), delete one edge in each
   component to shrink the shared region.

Triple cuts only ever split components, and a component's triples are a
subset of its parent's, so phase 1 settles in one pass per tree and can
never be reopened by later cuts. Overlap cuts, by contrast, can create new
overlaps with respect to trees that were already clean, so phase 2 sweeps
the trees repeatedly until a full pass makes no cut. Every cut strictly
reduces the forest's edge count, which bounds the total number of
iterations by the size of the first tree.

The number of edges removed is at most three per triple iteration and two
per overlap iteration, which is what yields the factor-3 bound on the
number of cuts relative to an optimal agreement forest.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forest import Forest, cut_edges, steiner_nodes
from .tree import PhyloTree
from .triples import find_incompatible, locate_cuts


@dataclass(frozen=True)
class CutEntry:
    """One iteration's worth of edge deletions.

    ``phase`` is "triple", "overlap", or "cycle"; ``tree`` indexes the input
    tree that witnessed the conflict; ``edges`` are (component index, child
    node id) pairs valid against the forest as it was when the cut was made,
    so a run can be replayed cut by cut.
    """

    phase: str
    tree: int
    edges: tuple
    witness: str


@dataclass
class CutSet:
    entries: list = field(default_factory=list)

    def count(self, phase: str) -> int:
        return sum(1 for e in self.entries if e.phase == phase)

    def edges_removed(self, phase: str | None = None) -> int:
        return sum(
            len(e.edges) for e in self.entries if phase is None or e.phase == phase
        )

    def extend(self, other: "CutSet") -> None:
        self.entries.extend(other.entries)


@dataclass(frozen=True)
class OverlapWitness:
    """Two components whose embeddings in one input tree share a node.

    ``meet_node`` is a deepest shared node of the two embeddings in that
    tree. ``edge_x`` / ``edge_y`` are the selected cut edges (child node
    ids) inside components ``x`` and ``y``.
    """

    x: int
    y: int
    tree: int
    meet_node: int
    edge_x: int
    edge_y: int


def find_overlap(f: Forest, t_i: PhyloTree, tree_index: int = 0):
    """First pair of components (in index order) whose minimal connecting
    subtrees in ``t_i`` share a node, or None when all embeddings are
    pairwise disjoint. Single-leaf components embed as bare leaves and can
    never overlap anything."""
    stein = [steiner_nodes(t_i, comp.leaf_labels) for comp in f.components]
    depths = t_i.depths
    for x in range(f.size):
        for y in range(x + 1, f.size):
            shared = stein[x] & stein[y]
            if not shared:
                continue
            meet = max(shared, key=lambda nd: (depths[nd], -nd))
            return OverlapWitness(
                x=x,
                y=y,
                tree=tree_index,
                meet_node=meet,
                edge_x=_overlap_cut_edge(f.components[x], t_i, meet),
                edge_y=_overlap_cut_edge(f.components[y], t_i, meet),
            )
    return None


def _overlap_cut_edge(comp: PhyloTree, t_i: PhyloTree, meet: int) -> int:
    """Edge of ``comp`` to cut for an overlap met at ``meet`` in ``t_i``.

    Qualifying edges are those whose whole leaf set descends from ``meet``
    in ``t_i``; the set is closed downward and never empty (at least one of
    the component's leaves sits below any shared node). Cutting a minimal
    qualifying edge (a leaf edge) cannot be meant, since it need not shrink
    the shared region, so take a maximal one — the edge closest to the
    component's root that still qualifies — breaking ties toward the larger
    detached subtree, then the smaller node id.
    """
    pidx = t_i.preorder_index()
    leaf_of = t_i.label_node
    below = comp._below_table()

    def qualifies(v: int) -> bool:
        return all(pidx.is_ancestor(meet, leaf_of[lab]) for lab in below[v])

    quals = [v for v in range(1, comp.n_nodes) if qualifies(v)]
    parent = comp.parent
    maximal = [v for v in quals if parent[v] == comp.root or parent[v] not in set(quals)]
    return max(maximal, key=lambda v: (len(below[v]), -v))


def maf_approx(trees) -> tuple:
    """Agreement forest of all input trees within a factor 3 of the optimal
    number of cuts, plus the log of every cut taken.

    The first tree seeds the working forest; the remaining trees drive the
    cutting. Iteration order (trees in input order, deepest-then-lexicographic
    triple choice, index-ordered overlap scan) is fixed, so equal inputs give
    byte-equal outputs. Raises ValueError for fewer than two trees or
    mismatched taxon sets.
    """
    trees = list(trees)
    if len(trees) < 2:
        raise ValueError("need at least two input trees")
    labels = trees[0].leaf_labels
    for t in trees[1:]:
        if t.leaf_labels != labels:
            raise ValueError("input trees must share one taxon set")

    forest = Forest.from_tree(trees[0])
    cuts = CutSet()

    # Phase 1: triples. A clean full pass terminates the sweep.
    while True:
        cut_made = False
        for i in range(1, len(trees)):
            while True:
                tr = find_incompatible(forest, trees[i])
                if tr is None:
                    break
                tc = locate_cuts(forest, tr, trees[i])
                edges = (
                    (tr.host, tc.edge_a),
                    (tr.host, tc.edge_c),
                    (tr.host, tc.edge_cherry),
                )
                forest = cut_edges(forest, edges)
                cuts.entries.append(CutEntry("triple", i, edges, str(tr)))
                cut_made = True
        if not cut_made:
            break

    # Phase 2: overlaps. Cuts here can reopen earlier trees, hence the sweep.
    while True:
        cut_made = False
        for i in range(1, len(trees)):
            while True:
                ow = find_overlap(forest, trees[i], tree_index=i)
                if ow is None:
                    break
                edges = ((ow.x, ow.edge_x), (ow.y, ow.edge_y))
                forest = cut_edges(forest, edges)
                cuts.entries.append(
                    CutEntry("overlap", i, edges, f"components {ow.x}~{ow.y}")
                )
                cut_made = True
        if not cut_made:
            break

    return forest, cuts


def rspr_upper_bound(trees) -> int:
    """Upper bound on the rooted subtree-prune-and-regraft distance between
    two trees: the approximate agreement forest's size minus one."""
    trees = list(trees)
    if len(trees) != 2:
        raise ValueError("rspr bound is defined for exactly two trees")
    forest, _ = maf_approx(trees)
    return forest.size - 1
