"""Forests over a fixed taxon set: edge cutting and agreement checking.

A forest is a sequence of components (rooted binary leaf-labeled trees) whose
leaf sets partition the taxon set of the input trees. Forests are immutable;
``cut_edges`` returns a new forest. Edges are named by their child endpoint
as ``(component index, child node id)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tree import PhyloTree, cut_pieces, lca, restricted_canonical


@dataclass(frozen=True)
class Forest:
    components: tuple
    origin_labels: frozenset

    @classmethod
    def from_tree(cls, t: PhyloTree) -> "Forest":
        return cls((t,), t.leaf_labels)

    @classmethod
    def from_components(cls, comps, origin_labels=None) -> "Forest":
        comps = tuple(comps)
        if origin_labels is None:
            origin_labels = frozenset().union(*(c.leaf_labels for c in comps))
        return cls(comps, frozenset(origin_labels))

    @property
    def size(self) -> int:
        return len(self.components)

    def all_edges(self) -> list:
        """Every edge of the forest as (component index, child node id)."""
        return [
            (ci, v)
            for ci, comp in enumerate(self.components)
            for v in range(1, comp.n_nodes)
        ]

    def taxon_partition_ok(self) -> bool:
        seen: set[str] = set()
        for comp in self.components:
            for lab in comp.leaf_labels:
                if lab in seen:
                    return False
                seen.add(lab)
        return seen == set(self.origin_labels)


def cut_edges(f: Forest, edges) -> Forest:
    """Delete the given edges, detach the subtrees below them as new
    components, suppress the degree-2 nodes left behind, and silently drop
    pieces that contain no labeled leaf.

    Within a cut component, the surviving pieces replace it in place, ordered
    by the preorder id of each piece's topmost node (remainder first, then
    detached subtrees top-down). Raises ValueError for edges that do not
    exist.
    """
    by_comp: dict[int, set[int]] = {}
    for ci, v in edges:
        if not (0 <= ci < f.size):
            raise ValueError(f"no component {ci}")
        comp = f.components[ci]
        if not (1 <= v < comp.n_nodes):
            raise ValueError(f"no edge with child {v} in component {ci}")
        by_comp.setdefault(ci, set()).add(v)
    if not by_comp:
        return f
    new_comps: list[PhyloTree] = []
    for ci, comp in enumerate(f.components):
        if ci not in by_comp:
            new_comps.append(comp)
            continue
        for nested in cut_pieces(comp, by_comp[ci]):
            if nested is not None:
                new_comps.append(PhyloTree.from_nested(nested))
    return Forest(tuple(new_comps), f.origin_labels)


def steiner_nodes(t: PhyloTree, taxa) -> set:
    """Node ids of the minimal subtree of ``t`` connecting ``taxa``."""
    root = lca(t, taxa)
    nodes = {root}
    par = t.parent
    for x in taxa:
        u = t.label_node[x]
        while u not in nodes:
            nodes.add(u)
            u = par[u]
    return nodes


def is_agreement_forest(f: Forest, trees) -> bool:
    """Decide whether ``f`` is an agreement forest of the given trees.

    True iff every component, restricted into every input tree, is isomorphic
    to that component, and the minimal connecting subtrees of the components
    are pairwise node-disjoint within every input tree. The input trees must
    all carry exactly the forest's taxon set and the components must
    partition it; violations raise ValueError.
    """
    if not trees:
        raise ValueError("no input trees")
    for t in trees:
        if t.leaf_labels != f.origin_labels:
            raise ValueError("label-set mismatch between forest and input trees")
    if not f.taxon_partition_ok():
        raise ValueError("forest components do not partition the taxon set")

    comp_labels = [comp.leaf_labels for comp in f.components]
    for t in trees:
        for comp, labs in zip(f.components, comp_labels):
            if restricted_canonical(t, labs) != comp.canonical():
                return False
    for t in trees:
        owner: dict[int, int] = {}
        for ci, labs in enumerate(comp_labels):
            for node in steiner_nodes(t, labs):
                if node in owner:
                    return False
                owner[node] = ci
    return True
