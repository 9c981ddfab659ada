"""Exact brute-force agreement-forest optima for small instances.

Ground truth for every ratio and identity check in the test suite: edge
subsets of the starting forest are enumerated in increasing size and the
first subset whose removal yields a valid (and, for the acyclic variant,
cycle-free) agreement forest wins. Any agreement forest of size m can be
produced by m - 1 deletions from the first tree — detach a component with a
deepest embedding root and recurse — so the minimum cut count and the
minimum forest size determine each other and enumerating subsets of the
first tree's edges is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .forest import Forest, cut_edges, is_agreement_forest
from .maaf import build_gf, is_acyclic

HARD_TAXON_CAP = 16


@dataclass(frozen=True)
class OracleResult:
    """Optimal cut count with a witness: cutting ``witness_edges`` out of
    the starting forest produces ``witness_forest``, and no smaller edge set
    passes the same validity predicate (exhaustively verified)."""

    min_cuts: int
    witness_forest: Forest
    witness_edges: tuple


def _search(start: Forest, trees, max_cuts, predicate):
    n_taxa = len(start.origin_labels)
    if n_taxa > HARD_TAXON_CAP:
        raise ValueError(
            f"exact search on {n_taxa} taxa would not finish; cap is {HARD_TAXON_CAP}"
        )
    pool = start.all_edges()
    budget = len(pool) if max_cuts is None else min(max_cuts, len(pool))
    for size in range(budget + 1):
        for subset in combinations(pool, size):
            candidate = cut_edges(start, subset)
            if predicate(candidate):
                return OracleResult(size, candidate, subset)
    return None


def _check_inputs(trees):
    trees = list(trees)
    if len(trees) < 2:
        raise ValueError("need at least two input trees")
    labels = trees[0].leaf_labels
    for t in trees[1:]:
        if t.leaf_labels != labels:
            raise ValueError("input trees must share one taxon set")
    return trees


def exact_maf_forest(start: Forest, trees, max_cuts=None):
    """Minimum number of edges to delete from ``start`` so that what remains
    is an agreement forest of the trees; None if over ``max_cuts``."""
    trees = _check_inputs(trees)
    return _search(start, trees, max_cuts, lambda f: is_agreement_forest(f, trees))


def exact_maf(trees, max_cuts=None):
    trees = _check_inputs(trees)
    return exact_maf_forest(Forest.from_tree(trees[0]), trees, max_cuts)


def exact_maaf_forest(start: Forest, trees, max_cuts=None):
    """Like ``exact_maf_forest`` but the surviving forest's component
    digraph must also be acyclic (which can force strictly more cuts)."""
    trees = _check_inputs(trees)

    def ok(f: Forest) -> bool:
        return is_agreement_forest(f, trees) and is_acyclic(
            build_gf(f, trees, validate=False)
        )

    return _search(start, trees, max_cuts, ok)


def exact_maaf(trees, max_cuts=None):
    trees = _check_inputs(trees)
    return exact_maaf_forest(Forest.from_tree(trees[0]), trees, max_cuts)


def exact_rspr(t1, t2) -> int:
    """Exact rooted SPR distance via the agreement-forest identity: size of
    an optimal agreement forest minus one, which equals its cut count."""
    return exact_maf([t1, t2]).min_cuts


def exact_hybridization(t1, t2) -> int:
    """Exact hybridization number: optimal acyclic forest size minus one."""
    return exact_maaf([t1, t2]).min_cuts
