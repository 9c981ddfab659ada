"""Shared test utilities: topology enumeration and forest comparison."""

from mafkit import PhyloTree, serialize
from mafkit.gen import _grafted_nested


def all_topologies(labels):
    """Every rooted binary tree shape on the given labels, each exactly once
    (sequential insertion over all attachment points is a bijection onto
    shapes: 3 trees for 3 labels, 15 for 4)."""
    shapes = [PhyloTree.from_nested(labels[0])]
    for lab in labels[1:]:
        shapes = [
            PhyloTree.from_nested(_grafted_nested(t, pos, lab))
            for t in shapes
            for pos in range(t.n_nodes)
        ]
    return shapes


def forest_canon(forest):
    """Order-free fingerprint of a forest: sorted component canonical forms."""
    return tuple(sorted(c.canonical() for c in forest.components))


def forest_newicks(forest):
    return [serialize(c) for c in forest.components]
