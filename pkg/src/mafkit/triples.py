"""Rooted triples: resolution, incompatibility detection, and cut selection.

A triple ``a,b|c`` says that in some tree the path from c to the root avoids
the path from a to b, i.e. a and b form a cherry relative to c. A triple held
by a forest component is *incompatible* with an input tree when that tree
resolves the same three taxa differently.

Incompatible triples are ordered: one triple precedes another when the other
triple's three-taxon ancestor lies strictly closer to the root (with the
two-taxon ancestor breaking ties at equal anchors). Triples in different
components, or with unrelated anchors, are incomparable. The search below
always returns a minimal triple — one with no incompatible triple strictly
below it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forest import Forest
from .tree import PhyloTree, lca, restricted_canonical


@dataclass(frozen=True)
class Triple:
    """Resolution ``a,b|c`` with its anchor nodes inside the host component.

    ``a`` and ``b`` are the cherry pair (stored with a <= b), ``c`` the
    outlier. ``cherry_lca`` is the ancestor of a and b only; ``triple_lca``
    the ancestor of all three. ``host`` indexes the forest component the
    anchors live in (0 for standalone queries on a bare tree).
    """

    a: str
    b: str
    c: str
    host: int
    cherry_lca: int
    triple_lca: int

    def taxa_key(self):
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"{self.a},{self.b}|{self.c}"


@dataclass(frozen=True)
class TripleCuts:
    """Candidate cut edges around an incompatible triple, each named by its
    child endpoint in the host component.

    ``edge_a`` / ``edge_b``: the child edges of the cherry ancestor.
    ``edge_cherry``: the edge hanging the cherry side off the triple
    ancestor. ``edge_c``: the first edge walking from the triple ancestor
    toward c below which everything still groups with c against both a and b
    (the parent edge of leaf c in the worst case).
    """

    host: int
    edge_a: int
    edge_b: int
    edge_c: int
    edge_cherry: int


class _PairDepths:
    """Per-tree lookup: depth of the LCA of any two leaves, by taxon name.

    Built once per tree in O(n^2) and memoized on the tree object, so triple
    resolution inside the hot search loop is three dict probes.
    """

    __slots__ = ("depth",)

    def __init__(self, t: PhyloTree):
        d: dict = {}
        depths = t.depths
        below = t._below_table()
        for u in range(t.n_nodes):
            ks = t.children[u]
            if not ks:
                continue
            du = depths[u]
            for la in below[ks[0]]:
                for lb in below[ks[1]]:
                    d[(la, lb)] = du
                    d[(lb, la)] = du
        self.depth = d

    def outlier(self, a: str, b: str, c: str) -> str:
        """The taxon split off by this tree's resolution of {a, b, c}."""
        d = self.depth
        dab = d[(a, b)]
        dac = d[(a, c)]
        if dab > dac:
            return c if dab > d[(b, c)] else a
        return b if dac > d[(b, c)] else a


def _pair_depths(t: PhyloTree) -> _PairDepths:
    if t._pair_depth is None:
        t._pair_depth = _PairDepths(t)
    return t._pair_depth


def triple_of(t: PhyloTree, taxa) -> Triple:
    """Resolve three taxa in ``t``: returns the unique cherry-pair/outlier
    split realized there, with its anchor nodes."""
    taxa = sorted(set(taxa))
    if len(taxa) != 3:
        raise ValueError(f"need exactly 3 distinct taxa, got {taxa}")
    missing = [x for x in taxa if x not in t.label_node]
    if missing:
        raise ValueError(f"unknown taxon {missing[0]!r}")
    out = _pair_depths(t).outlier(*taxa)
    a, b = [x for x in taxa if x != out]
    return _make_triple(t, a, b, out, host=0)


def _make_triple(t: PhyloTree, a: str, b: str, c: str, host: int) -> Triple:
    return Triple(
        a=min(a, b),
        b=max(a, b),
        c=c,
        host=host,
        cherry_lca=lca(t, (a, b)),
        triple_lca=lca(t, (a, b, c)),
    )


def triple_less(t: PhyloTree, first: Triple, second: Triple) -> bool:
    """Partial order used to pick minimal incompatible triples: ``first``
    precedes ``second`` when second's anchors sit strictly above first's.
    Both triples must be anchored in the same component ``t``."""
    if first.host != second.host:
        return False
    pidx = t.preorder_index()
    if first.triple_lca != second.triple_lca:
        return pidx.is_strict_ancestor(second.triple_lca, first.triple_lca)
    if first.cherry_lca == second.cherry_lca:
        return False
    return pidx.is_strict_ancestor(second.cherry_lca, first.cherry_lca)


def find_incompatible(f: Forest, t_i: PhyloTree):
    """A minimal incompatible triple of ``f`` with respect to ``t_i``, or
    None when every component is realized identically in ``t_i``.

    Components whose restriction into ``t_i`` is isomorphic to them hold no
    incompatible triple and are skipped wholesale. Within a conflicting
    component the search walks candidate anchors deepest-first, which
    guarantees minimality; remaining ties break lexicographically on taxon
    names so runs are reproducible.
    """
    best = None
    resolver = _pair_depths(t_i)
    for ci, comp in enumerate(f.components):
        if comp.n_leaves < 3:
            continue
        if restricted_canonical(t_i, comp.leaf_labels) == comp.canonical():
            continue
        cand = _deepest_conflict(comp, ci, resolver)
        if best is None or cand.taxa_key() < best.taxa_key():
            best = cand
    return best


def _deepest_conflict(comp: PhyloTree, host: int, resolver: _PairDepths) -> Triple:
    """Minimal incompatible triple of a component known to conflict.

    Anchor pairs (outer, cherry) are scanned in decreasing (depth(outer),
    depth(cherry)) order; the first depth level containing any conflict is
    collected fully and the lexicographically least triple wins. Nothing at
    a given level can be preceded by a triple from a shallower level, so the
    result is minimal.
    """
    depths = comp.depths
    below = comp._below_table()
    children = comp.children
    sizes = comp.sizes

    anchor_pairs = []
    for outer in range(comp.n_nodes):
        ks = children[outer]
        if not ks:
            continue
        for side in (0, 1):
            top = ks[side]
            other = ks[1 - side]
            for cherry in range(top, top + sizes[top]):
                if children[cherry]:
                    anchor_pairs.append(
                        (-depths[outer], -depths[cherry], outer, cherry, other)
                    )
    anchor_pairs.sort()

    found: list[tuple] = []
    level = None
    for noud, novd, outer, cherry, other in anchor_pairs:
        if found and (noud, novd) != level:
            break
        level = (noud, novd)
        outlier = resolver.outlier
        for a in below[children[cherry][0]]:
            for b in below[children[cherry][1]]:
                for c in below[other]:
                    if outlier(a, b, c) != c:
                        p, q = (a, b) if a <= b else (b, a)
                        found.append(((p, q, c), outer, cherry))
    if not found:
        raise AssertionError("component conflicts but no incompatible triple found")
    (a, b, c), outer, cherry = min(found)
    return Triple(a=a, b=b, c=c, host=host, cherry_lca=cherry, triple_lca=outer)


def locate_cuts(f: Forest, tr: Triple, t_i: PhyloTree) -> TripleCuts:
    """The cut edges around a minimal incompatible triple.

    ``edge_c`` is chosen by walking from the triple ancestor toward c and
    taking the first edge below which every other taxon c' still pairs with
    c against both a and b in ``t_i`` (inside the host component this holds
    by construction, since everything below that edge is on c's side of the
    triple ancestor). The walk always terminates: the parent edge of leaf c
    satisfies the condition vacuously.
    """
    comp = f.components[tr.host]
    resolver = _pair_depths(t_i)
    if resolver.outlier(tr.a, tr.b, tr.c) == tr.c:
        raise ValueError(f"triple {tr} is not incompatible with this tree")

    below = comp._below_table()
    sizes = comp.sizes
    a_node = comp.label_node[tr.a]
    c_node = comp.label_node[tr.c]

    def child_toward(u: int, target: int) -> int:
        for k in comp.children[u]:
            if k <= target < k + sizes[k]:
                return k
        raise AssertionError("target not below node")

    edge_a = child_toward(tr.cherry_lca, a_node)
    edge_b = [k for k in comp.children[tr.cherry_lca] if k != edge_a][0]
    edge_cherry = child_toward(tr.triple_lca, tr.cherry_lca)

    outlier = resolver.outlier
    node = child_toward(tr.triple_lca, c_node)
    while True:
        ok = True
        for other in below[node]:
            if other == tr.c:
                continue
            if outlier(tr.c, other, tr.a) != tr.a or outlier(tr.c, other, tr.b) != tr.b:
                ok = False
                break
        if ok:
            break
        node = child_toward(node, c_node)
    edge_c = node

    return TripleCuts(
        host=tr.host,
        edge_a=edge_a,
        edge_b=edge_b,
        edge_c=edge_c,
        edge_cherry=edge_cherry,
    )
