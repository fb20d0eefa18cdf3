"""Minimum tree-child network inference over taxon orderings.

Every optimal tree-child network is the construction of some ordering fed
with per-taxon shortest common supersequences of the input trees' lineage
taxon strings, so an exhaustive search over orderings is exact. For line
trees sharing a lowest leaf the optimum is the one-component network of an
SCS of the encoded permutations.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .codec import DEFAULT_RESERVED, render_symbols, write_extended_newick
from .construct import (DEFAULT_DISPLAY_BUDGET, construct_network, one_component_network,
                        permutation_from_line_tree, verify_displays_all)
from .errors import CapacityError, NotInImageError, ProfileError, StructureError, TaxonError
from .lts import Ordering, lineage_taxon_strings
from .model import LEAF, BinaryTree, PhyloNetwork, canonical_form, hybridization_number, \
    is_line_tree, is_tree_child
from .scs import DEFAULT_STATE_BUDGET, exact_scs, is_supersequence, scs, scs_length

DEFAULT_MAX_TAXA = 9

Word = tuple[str, ...]


@dataclass(frozen=True)
class LtsProfile:
    """Per-taxon LTS rows (one entry per tree) and their chosen supersequences."""

    ordering: Ordering
    alphas: dict[str, tuple[Word, ...]]
    betas: dict[str, Word]

    @property
    def total_length(self) -> int:
        return sum(len(b) for b in self.betas.values())


@dataclass
class SolveReport:
    ordering: Ordering
    network: PhyloNetwork
    hn: int
    betas: dict[str, Word]
    searched: int
    verified: bool = True
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "hn": self.hn,
            "ordering": list(self.ordering.sequence),
            "network": write_extended_newick(self.network),
            "betas": {x: render_symbols(b) for x, b in self.betas.items()},
            "searched": self.searched,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _common_taxa(trees: Sequence[BinaryTree]) -> frozenset[str]:
    if not trees:
        raise ValueError("at least one tree is required")
    taxa = trees[0].taxa
    for i, t in enumerate(trees[1:], start=1):
        if t.taxa != taxa:
            raise TaxonError(f"tree {i} has taxa {sorted(t.taxa)}, expected {sorted(taxa)}")
    return taxa


def dedupe_trees(trees: Sequence[BinaryTree]) -> list[BinaryTree]:
    seen, out = set(), []
    for t in trees:
        form = canonical_form(t)
        if form not in seen:
            seen.add(form)
            out.append(t)
    return out


def _row_key(row: Sequence[Word]) -> tuple[Word, ...]:
    return tuple(sorted({w for w in row if w}))


def lts_profile(trees: Sequence[BinaryTree], ordering: Ordering, *, heuristic: bool = False,
                scs_budget: int = DEFAULT_STATE_BUDGET, _cache: dict | None = None) -> LtsProfile:
    taxa = _common_taxa(trees)
    if taxa != ordering.taxa:
        raise TaxonError(f"ordering taxa {sorted(ordering.taxa)} != tree taxa {sorted(taxa)}")
    per_tree = [lineage_taxon_strings(t, ordering) for t in trees]
    alphas = {x: tuple(lts[x] for lts in per_tree) for x in ordering}
    betas = {}
    for x in ordering:
        key = _row_key(alphas[x])
        if _cache is not None and key in _cache:
            betas[x] = _cache[key]
            continue
        betas[x] = scs(key, heuristic=heuristic, budget=scs_budget)
        if _cache is not None:
            _cache[key] = betas[x]
    return LtsProfile(ordering, alphas, betas)


def network_for_ordering(trees: Sequence[BinaryTree], ordering: Ordering, **kw
                         ) -> tuple[PhyloNetwork, int]:
    profile = lts_profile(trees, ordering, **kw)
    net = construct_network(ordering, profile.betas)
    return net, hybridization_number(net)


def ordering_hns(trees: Sequence[BinaryTree], **kw) -> dict[Ordering, int]:
    """Graph-counted HN of the construction for every ordering (no pruning)."""
    taxa = sorted(_common_taxa(trees))
    cache: dict = {}
    return {Ordering(p): network_for_ordering(trees, Ordering(p), _cache=cache, **kw)[1]
            for p in itertools.permutations(taxa)}


def solve_min_tcn(trees: Sequence[BinaryTree], *, max_taxa: int = DEFAULT_MAX_TAXA,
                  prune: bool = True, scs_budget: int = DEFAULT_STATE_BUDGET,
                  display_budget: int = DEFAULT_DISPLAY_BUDGET) -> SolveReport:
    """Exact minimum-HN tree-child network displaying every input tree.

    Orderings are visited in lexicographic order of taxon names, so the first
    optimum found is the lexicographically smallest one.
    """
    taxa = sorted(_common_taxa(trees))
    if len(taxa) > max_taxa:
        raise CapacityError(f"{len(taxa)} taxa exceed the ordering enumeration bound "
                            f"{max_taxa}; use solve-fast for line trees or raise --max-taxa")
    unique = dedupe_trees(trees)
    n_labels = len(taxa) - 1  # every taxon but the smallest occurs in the strings
    cache: dict[tuple[Word, ...], Word] = {}
    best = None
    best_hn = None
    searched = 0
    for perm in itertools.permutations(taxa):
        searched += 1
        ordering = Ordering(perm)
        per_tree = [lineage_taxon_strings(t, ordering) for t in unique]
        rows = {x: _row_key([lts[x] for lts in per_tree]) for x in perm}
        floors = {x: max((len(w) for w in rows[x]), default=0) for x in perm}
        bound = sum(floors.values()) - n_labels
        if prune and best_hn is not None and bound >= best_hn:
            continue
        betas = {}
        for x in perm:
            if rows[x] not in cache:
                cache[rows[x]] = exact_scs(rows[x], budget=scs_budget)
            betas[x] = cache[rows[x]]
            bound += len(betas[x]) - floors[x]
            if prune and best_hn is not None and bound >= best_hn:
                break
        else:
            if best_hn is None or bound < best_hn:
                best, best_hn = (ordering, betas), bound
    ordering, betas = best
    net = construct_network(ordering, betas)
    hn = hybridization_number(net)
    if hn != best_hn:
        raise StructureError(f"graph-counted HN {hn} differs from string count {best_hn}")
    if not is_tree_child(net):
        raise StructureError("constructed network is not tree-child")
    verify_displays_all(net, unique, display_budget)
    return SolveReport(ordering, net, hn, betas, searched)


# -- line trees ----------------------------------------------------------------

def anchor_chain(perm: Sequence[str], ordering: Ordering,
                 reserved: str = DEFAULT_RESERVED) -> tuple[str, ...]:
    """Taxa with a non-empty LTS in ``T(perm)`` when the reserved leaf is not smallest."""
    perm = tuple(perm)
    if ordering.smallest == reserved:
        raise ProfileError("anchor chains are only defined when the reserved taxon is not "
                           "the smallest in the ordering")
    if ordering.taxa != set(perm) | {reserved}:
        raise TaxonError("ordering taxa do not match the permutation plus reserved taxon")
    stop = ordering.min((perm[-1], reserved))
    chain = [ordering.smallest]
    while chain[-1] != stop:
        x = perm.index(chain[-1])
        chain.append(ordering.min(perm[x + 1:] + (reserved,)))
    return tuple(chain)


def lowest_cherry(tree: BinaryTree) -> frozenset[str]:
    for v in tree.nodes:
        kids = tree.children(v)
        if len(kids) == 2 and all(tree.kind(c) == LEAF for c in kids):
            return frozenset(tree.labels[c] for c in kids)
    return frozenset()


def common_reserved(trees: Sequence[BinaryTree], reserved: str | None = None) -> str:
    """The shared lowest leaf of a set of line trees."""
    _common_taxa(trees)
    for i, t in enumerate(trees):
        if not is_line_tree(t):
            raise NotInImageError(f"tree {i} is not a line tree")
    shared = frozenset.intersection(*(lowest_cherry(t) for t in trees))
    if reserved is not None:
        if reserved not in shared:
            raise NotInImageError(f"{reserved!r} is not the lowest leaf of every tree")
        return reserved
    if not shared:
        raise NotInImageError("line trees have no common lowest leaf")
    return DEFAULT_RESERVED if DEFAULT_RESERVED in shared else min(shared)


def assemble_supersequence(trees: Sequence[BinaryTree], ordering: Ordering,
                           reserved: str = DEFAULT_RESERVED,
                           w_choices: Mapping[str, Sequence[str]] | None = None) -> Word:
    """Common supersequence of the line trees' permutations read off one ordering.

    ``w_choices`` overrides the SCS picked for a taxon's non-empty LTS set; each
    override must itself be a shortest common supersequence of that set.
    """
    common_reserved(trees, reserved)
    perms = [permutation_from_line_tree(t, reserved) for t in trees]
    if ordering.smallest == reserved:
        return exact_scs(perms)
    w_choices = w_choices or {}
    per_tree = [lineage_taxon_strings(t, ordering) for t in trees]
    blocks = []
    for x in ordering:
        row = [lts[x] for lts in per_tree if lts[x]]
        if not row:
            continue
        if x in w_choices:
            w = tuple(w_choices[x])
            if not all(is_supersequence(w, s) for s in row) or len(w) != scs_length(row):
                raise ProfileError(f"override for {x!r} is not a shortest common "
                                   "supersequence of its strings")
        else:
            w = exact_scs(row)
        blocks.append((x, w))
    out: list[str] = []
    for i, (x, w) in enumerate(blocks):
        if i == len(blocks) - 1 and x == reserved:
            out.extend(w)
        else:
            out.extend(w[:-1])
            out.append(x)
    return tuple(s for s in out if s != reserved)


def solve_line_trees_fast(trees: Sequence[BinaryTree], reserved: str | None = None, *,
                          scs_budget: int = DEFAULT_STATE_BUDGET,
                          display_budget: int = DEFAULT_DISPLAY_BUDGET) -> SolveReport:
    """Optimal network for line trees: ``N(Q)`` for a shortest common supersequence ``Q``."""
    reserved = common_reserved(trees, reserved)
    perms = [permutation_from_line_tree(t, reserved) for t in trees]
    sigma = sorted(trees[0].taxa - {reserved})
    q = exact_scs(perms, budget=scs_budget)
    net = one_component_network(q, sigma, reserved)
    hn = hybridization_number(net)
    if hn != len(q) - len(sigma):
        raise StructureError(f"N(Q) has HN {hn}, expected {len(q) - len(sigma)}")
    try:
        verify_displays_all(net, dedupe_trees(trees), display_budget)
        verified = True
    except CapacityError:
        verified = False
    betas = {x: () for x in sigma}
    betas[reserved] = q
    return SolveReport(Ordering([reserved] + sigma), net, hn, betas, searched=1,
                       verified=verified, extra={"supersequence": q})
