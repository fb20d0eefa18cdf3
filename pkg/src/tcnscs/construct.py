"""Constructions between permutations, line trees, strings and networks.

``T(P)`` is the line tree of a permutation, ``N(Q)`` the one-component
network of a string; :func:`construct_network` assembles a tree-child network
from an ordering and one string per taxon. Display checking is brute force
over all reticulate-parent selections.
"""

from __future__ import annotations

import itertools
import math
from typing import Mapping, Sequence

from .codec import DEFAULT_RESERVED, suppress_degree2
from .errors import CapacityError, NotInImageError, ProfileError, StructureError, TaxonError
from .lts import Ordering, check_c1_c2
from .model import LEAF, BinaryTree, PhyloNetwork, canonical_form, check_taxon, is_line_tree

DEFAULT_DISPLAY_BUDGET = 10**6


def line_tree_from_permutation(perm: Sequence[str],
                               reserved: str = DEFAULT_RESERVED) -> BinaryTree:
    perm = tuple(perm)
    n = len(perm)
    if n == 0:
        raise ValueError("permutation must be non-empty")
    if len(set(perm)) != n:
        raise TaxonError(f"permutation repeats a symbol: {perm}")
    if reserved in perm:
        raise TaxonError(f"reserved taxon {reserved!r} occurs in the permutation")
    for x in perm + (reserved,):
        check_taxon(x)
    # ids: r=0, v_i=i, leaf p_i=n+i, leaf for the reserved taxon=2n+1
    edges = [(0, 1)]
    edges += [(i, i + 1) for i in range(1, n)]
    edges += [(i, n + i) for i in range(1, n + 1)]
    edges.append((n, 2 * n + 1))
    labels = {n + i: perm[i - 1] for i in range(1, n + 1)}
    labels[2 * n + 1] = reserved
    return BinaryTree(edges, labels)


def permutation_from_line_tree(tree: BinaryTree,
                               reserved: str = DEFAULT_RESERVED) -> tuple[str, ...]:
    if reserved not in tree.taxa:
        raise TaxonError(f"reserved taxon {reserved!r} is not a leaf of the tree")
    if not is_line_tree(tree):
        raise NotInImageError("tree is not a line tree")
    v = tree.children(tree.root)[0]
    if tree.kind(v) == LEAF:
        raise NotInImageError("single-leaf tree encodes no permutation")
    out = []
    while True:
        kids = tree.children(v)
        leaves = sorted((tree.labels[c] for c in kids if tree.kind(c) == LEAF))
        inner = [c for c in kids if tree.kind(c) != LEAF]
        if inner:
            if leaves[0] == reserved:
                raise NotInImageError(f"reserved taxon {reserved!r} is not in the lowest cherry")
            out.append(leaves[0])
            v = inner[0]
            continue
        if reserved not in leaves:
            raise NotInImageError(f"reserved taxon {reserved!r} is not in the lowest cherry")
        out.extend(x for x in leaves if x != reserved)
        return tuple(out)


def one_component_network(q: Sequence[str], alphabet: Sequence[str] | None = None,
                          reserved: str = DEFAULT_RESERVED) -> PhyloNetwork:
    """``N(Q)``: a spine over the letters of ``q`` feeding one collector per symbol."""
    q = tuple(q)
    sigma = tuple(sorted(set(q))) if alphabet is None else tuple(alphabet)
    if reserved in sigma:
        raise TaxonError(f"reserved taxon {reserved!r} is in the alphabet")
    missing = sorted(set(sigma) - set(q))
    if missing:
        raise TaxonError(f"symbols {missing} do not occur in the string; their leaves "
                         "would be unreachable")
    stray = sorted(set(q) - set(sigma))
    if stray:
        raise TaxonError(f"symbols {stray} are not in the alphabet")
    m, n = len(q), len(sigma)
    # ids: r=0, v_i=i, reserved leaf=m+1, collector r_j=m+2+j, leaf a_j=m+2+n+j
    collector = {a: m + 2 + j for j, a in enumerate(sigma)}
    edges = [(0, 1)] + [(i, i + 1) for i in range(1, m)] + [(m, m + 1)]
    edges += [(collector[a], m + 2 + n + j) for j, a in enumerate(sigma)]
    edges += [(i, collector[a]) for i, a in enumerate(q, start=1)]
    labels = {m + 2 + n + j: a for j, a in enumerate(sigma)}
    labels[m + 1] = reserved
    return suppress_degree2(PhyloNetwork(edges, labels, check=False), check=True)


def construct_network(ordering: Ordering, betas: Mapping[str, Sequence[str]]) -> PhyloNetwork:
    """Tree-child network from one string per taxon.

    Each taxon gets a vertical path ``h_i, v_i1..v_ik, leaf``; the m-th letter
    ``x`` of taxon i's string adds an edge from ``v_im`` to ``h_x``; collectors
    of indegree 1 are contracted. ``h`` of the smallest taxon is the root.
    """
    if not check_c1_c2(betas, ordering):
        raise ProfileError("strings violate the ordering conditions: each string must use "
                           "only larger taxa and the largest taxon's string must be empty")
    used = {x for s in betas.values() for x in s}
    orphans = [x for x in ordering.sequence[1:] if x not in used]
    if orphans:
        raise ProfileError(f"taxa {orphans} occur in no string; their paths would be "
                           "unreachable from the root")
    taxa = ordering.sequence
    head = {x: i for i, x in enumerate(taxa)}
    next_id = len(taxa)
    edges, labels = [], {}
    for x in taxa:
        prev = head[x]
        for sym in betas.get(x, ()):
            v = next_id
            next_id += 1
            edges.append((prev, v))
            edges.append((v, head[sym]))
            prev = v
        labels[next_id] = x
        edges.append((prev, next_id))
        next_id += 1
    draft = PhyloNetwork(edges, labels, check=False)
    return suppress_degree2(draft, only=[head[x] for x in taxa[1:]], check=True)


# -- display -------------------------------------------------------------------

def _selections(net: PhyloNetwork, budget: int):
    retics = net.reticulate_nodes()
    count = math.prod(len(net.parents(r)) for r in retics)
    if count > budget:
        raise CapacityError(f"display check needs {count} selections, budget is {budget}")
    choices = itertools.product(*(net.parents(r) for r in retics))
    return [dict(zip(retics, choice)) for choice in choices]


def _selected_form(net: PhyloNetwork, chosen: Mapping[int, int]) -> str | None:
    """Canonical form of the tree displayed by one parent selection.

    Pruning of dead ends and suppression of unary nodes happen implicitly.
    """

    def form(v):
        kids = [c for c in net.children(v) if chosen.get(c, v) == v]
        if not net.children(v):
            name = net.labels[v]
            return name, name
        parts = [p for p in (form(c) for c in kids) if p is not None]
        if not parts:
            return None
        if len(parts) == 1:
            return parts[0]
        parts.sort()
        return parts[0][0], "(" + ",".join(p[1] for p in parts) + ")"

    top = form(net.root)
    return None if top is None else "(" + top[1] + ")"


def display_tree(net: PhyloNetwork, chosen: Mapping[int, int]) -> BinaryTree:
    """Keep only the chosen incoming edge per reticulate node, prune, suppress."""
    edges = [(u, v) for u, v in net.edges if chosen.get(v, u) == u]
    labelled = set(net.labels)
    while True:
        sources = {u for u, _ in edges}
        dead = {v for _, v in edges if v not in sources and v not in labelled}
        if not dead:
            break
        edges = [(u, v) for u, v in edges if v not in dead]
    draft = PhyloNetwork(edges, net.labels, check=False)
    return BinaryTree.from_network(suppress_degree2(draft))


def is_displayed(tree: BinaryTree, net: PhyloNetwork,
                 budget: int = DEFAULT_DISPLAY_BUDGET) -> bool:
    if tree.taxa != net.taxa:
        raise TaxonError(f"taxon sets differ: {sorted(tree.taxa)} vs {sorted(net.taxa)}")
    target = canonical_form(tree)
    return any(_selected_form(net, chosen) == target for chosen in _selections(net, budget))


def displayed_tree_forms(net: PhyloNetwork, budget: int = DEFAULT_DISPLAY_BUDGET) -> set[str]:
    return {_selected_form(net, chosen) for chosen in _selections(net, budget)}


def displayed_line_trees(net: PhyloNetwork, reserved: str = DEFAULT_RESERVED,
                         budget: int = DEFAULT_DISPLAY_BUDGET) -> set[tuple[str, ...]]:
    found = set()
    for chosen in _selections(net, budget):
        tree = display_tree(net, chosen)
        if is_line_tree(tree):
            try:
                found.add(permutation_from_line_tree(tree, reserved))
            except NotInImageError:
                pass
    return found


def verify_displays_all(net: PhyloNetwork, trees: Sequence[BinaryTree],
                        budget: int = DEFAULT_DISPLAY_BUDGET) -> None:
    forms = displayed_tree_forms(net, budget)
    missing = [i for i, t in enumerate(trees) if canonical_form(t) not in forms]
    if missing:
        raise StructureError(f"network does not display input trees {missing}")
