"""Graph model for rooted binary trees and phylogenetic networks.

Networks are stored as an arena of integer node ids plus a directed edge list.
Node kinds are *derived* from degrees and checked on construction, so a graph
that reaches user code has already passed the structural invariants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import StructureError, TaxonError

ROOT, TREE, RETICULATE, LEAF = "root", "tree", "reticulate", "leaf"

_TAXON_RE = re.compile(r"[^\s(),;:#]+")


def check_taxon(name: str) -> str:
    if not isinstance(name, str) or not _TAXON_RE.fullmatch(name):
        raise TaxonError(f"invalid taxon name {name!r}")
    return name


@dataclass(frozen=True)
class TaxonSet:
    """Ordered taxon collection with an optional reserved member (the extra leaf)."""

    members: tuple[str, ...]
    reserved: str | None = None

    def __post_init__(self):
        members = tuple(check_taxon(m) for m in self.members)
        object.__setattr__(self, "members", members)
        if len(set(members)) != len(members):
            dupes = sorted({m for m in members if members.count(m) > 1})
            raise TaxonError(f"duplicate taxa: {dupes}")
        if self.reserved is not None and self.reserved not in members:
            raise TaxonError(f"reserved taxon {self.reserved!r} is not a member")

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, name):
        return name in self.members

    @property
    def core(self) -> tuple[str, ...]:
        """Members other than the reserved one."""
        return tuple(m for m in self.members if m != self.reserved)


class PhyloNetwork:
    """Rooted phylogenetic network on a node arena.

    ``edges`` is an iterable of ``(parent, child)`` id pairs and ``labels`` maps
    leaf ids to taxon names. With ``check=False`` the object is a draft: any
    DAG-ish edge set is accepted, which the construction pipelines use for
    intermediate graphs before degree-2 suppression.
    """

    def __init__(self, edges: Iterable[tuple[int, int]], labels: Mapping[int, str],
                 check: bool = True):
        self._edges = tuple((int(u), int(v)) for u, v in edges)
        self._labels = MappingProxyType(dict(labels))
        nodes = set(self._labels)
        children: dict[int, list[int]] = {}
        parents: dict[int, list[int]] = {}
        for u, v in self._edges:
            nodes.update((u, v))
            children.setdefault(u, []).append(v)
            parents.setdefault(v, []).append(u)
        self._nodes = tuple(sorted(nodes))
        self._children = {v: tuple(children.get(v, ())) for v in self._nodes}
        self._parents = {v: tuple(parents.get(v, ())) for v in self._nodes}
        roots = [v for v in self._nodes if not self._parents[v]]
        self._root = roots[0] if len(roots) == 1 else None
        self.checked = False
        if check:
            self._validate(roots)
            self.checked = True

    # -- structure ---------------------------------------------------------

    def _validate(self, roots):
        if not self._edges:
            raise StructureError("network has no edges")
        if len(roots) != 1:
            raise StructureError("expected exactly one root", roots)
        if len(set(self._edges)) != len(self._edges):
            dup = sorted({e for e in self._edges if self._edges.count(e) > 1})
            raise StructureError("parallel edges", [f"{u}->{v}" for u, v in dup])
        bad = []
        for v in self._nodes:
            indeg, outdeg = len(self._parents[v]), len(self._children[v])
            if v == self._root:
                ok = outdeg == 1
            elif outdeg == 0:
                ok = indeg == 1 and v in self._labels
            elif indeg == 1:
                ok = outdeg == 2
            else:
                ok = indeg >= 2 and outdeg == 1
            if not ok or (outdeg and v in self._labels):
                bad.append(v)
        if bad:
            raise StructureError("degree/label constraints violated", bad)
        names = list(self._labels.values())
        if len(set(names)) != len(names):
            raise StructureError("leaf labels are not unique",
                                 [v for v, n in self._labels.items() if names.count(n) > 1])
        for name in names:
            check_taxon(name)
        order = self.topological_order()
        if len(order) != len(self._nodes):
            raise StructureError("graph has a directed cycle",
                                 sorted(set(self._nodes) - set(order)))

    def topological_order(self) -> list[int]:
        """Kahn order with ties broken by node id (deterministic)."""
        import heapq

        indeg = {v: len(self._parents[v]) for v in self._nodes}
        heap = [v for v in self._nodes if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(heap, c)
        return order

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def nodes(self) -> tuple[int, ...]:
        return self._nodes

    @property
    def labels(self) -> Mapping[int, str]:
        return self._labels

    @property
    def root(self) -> int:
        if self._root is None:
            raise StructureError("graph has no unique root")
        return self._root

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def parents(self, v: int) -> tuple[int, ...]:
        return self._parents[v]

    def kind(self, v: int) -> str:
        if v not in self._children:
            raise KeyError(f"unknown node id {v}")
        if not self._parents[v]:
            return ROOT
        if not self._children[v]:
            return LEAF
        return TREE if len(self._parents[v]) == 1 else RETICULATE

    def leaves(self) -> list[int]:
        return [v for v in self._nodes if self._parents[v] and not self._children[v]]

    def reticulate_nodes(self) -> list[int]:
        return [v for v in self._nodes if len(self._parents[v]) >= 2]

    @property
    def taxa(self) -> frozenset[str]:
        return frozenset(self._labels.values())

    def leaf_of(self, taxon: str) -> int:
        for v, name in self._labels.items():
            if name == taxon:
                return v
        raise KeyError(f"no leaf labelled {taxon!r}")

    def __repr__(self):
        return (f"{type(self).__name__}(nodes={len(self._nodes)}, "
                f"edges={len(self._edges)}, taxa={sorted(self.taxa)})")


class BinaryTree(PhyloNetwork):
    """A phylogenetic network without reticulate nodes."""

    def __init__(self, edges, labels, check: bool = True):
        super().__init__(edges, labels, check=check)
        if check:
            retics = self.reticulate_nodes()
            if retics:
                raise StructureError("a binary tree cannot have reticulate nodes", retics)

    @classmethod
    def from_network(cls, net: PhyloNetwork) -> "BinaryTree":
        return cls(net.edges, net.labels)


def hybridization_number(net: PhyloNetwork) -> int:
    if not net.checked:
        PhyloNetwork(net.edges, net.labels)  # raises StructureError
    return sum(len(net.parents(v)) - 1 for v in net.reticulate_nodes())


def is_tree_child(net: PhyloNetwork) -> bool:
    for v in net.nodes:
        kids = net.children(v)
        if kids and not any(net.kind(c) in (TREE, LEAF) for c in kids):
            return False
    return True


def is_line_tree(tree: BinaryTree) -> bool:
    for v in tree.nodes:
        if v == tree.root or tree.kind(v) == LEAF:
            continue
        if not any(tree.kind(c) == LEAF for c in tree.children(v)):
            return False
    return True


def is_below(net: PhyloNetwork, u: int, v: int) -> bool:
    """True iff there is a directed path from ``v`` to ``u`` (reflexive)."""
    for node in (u, v):
        if node not in net.nodes:
            raise KeyError(f"unknown node id {node}")
    stack, seen = [v], {v}
    while stack:
        w = stack.pop()
        if w == u:
            return True
        for c in net.children(w):
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def _tree_form(tree: PhyloNetwork, v: int) -> tuple[str, str]:
    """(smallest leaf name, canonical text) of the subtree at ``v``."""
    kids = tree.children(v)
    if not kids:
        name = tree.labels[v]
        return name, name
    parts = sorted(_tree_form(tree, c) for c in kids)
    return parts[0][0], "(" + ",".join(p[1] for p in parts) + ")"


def canonical_form(tree: BinaryTree) -> str:
    """Isomorphism-invariant text; equal strings iff leaf-labelled isomorphic.

    The text is the Newick body (without ``;``) with children ordered by their
    smallest descendant leaf name.
    """
    return _tree_form(tree, tree.root)[1]


def trees_isomorphic(t1: BinaryTree, t2: BinaryTree) -> bool:
    """Explicit recursive isomorphism test, independent of :func:`canonical_form`."""

    def leafset(t, v):
        kids = t.children(v)
        if not kids:
            return frozenset([t.labels[v]])
        return frozenset().union(*(leafset(t, c) for c in kids))

    def iso(u, v):
        cu, cv = t1.children(u), t2.children(v)
        if len(cu) != len(cv):
            return False
        if not cu:
            return t1.labels[u] == t2.labels[v]
        if len(cu) == 1:
            return iso(cu[0], cv[0])
        return ((iso(cu[0], cv[0]) and iso(cu[1], cv[1]))
                or (iso(cu[0], cv[1]) and iso(cu[1], cv[0])))

    if leafset(t1, t1.root) != leafset(t2, t2.root):
        return False
    return iso(t1.root, t2.root)


def networks_isomorphic(n1: PhyloNetwork, n2: PhyloNetwork) -> bool:
    """Leaf-label preserving digraph isomorphism (VF2 via networkx)."""
    if n1.taxa != n2.taxa or len(n1.nodes) != len(n2.nodes):
        return False

    def to_nx(net):
        g = nx.DiGraph()
        for v in net.nodes:
            g.add_node(v, taxon=net.labels.get(v))
        g.add_edges_from(net.edges)
        return g

    return nx.is_isomorphic(to_nx(n1), to_nx(n2),
                            node_match=lambda a, b: a["taxon"] == b["taxon"])

