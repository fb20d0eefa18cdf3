"""Ordering-dependent node labelling and lineage taxon strings (LTS).

Under a total order on the taxa, the root takes the smallest taxon and every
other internal node takes the larger of its two children's subtree minima.
The LTS of a taxon ``f`` is the sequence of labels strictly between the node
labelled ``f`` and the leaf ``f``.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import ProfileError, TaxonError
from .model import BinaryTree


class Ordering:
    """A total order on a taxon set; position 0 is the smallest taxon."""

    __slots__ = ("sequence", "_rank")

    def __init__(self, sequence: Iterable[str]):
        seq = tuple(sequence)
        if len(set(seq)) != len(seq):
            raise TaxonError(f"ordering repeats a taxon: {seq}")
        object.__setattr__(self, "sequence", seq)
        object.__setattr__(self, "_rank", {x: i for i, x in enumerate(seq)})

    def __setattr__(self, name, value):
        raise AttributeError("Ordering is immutable")

    def rank(self, taxon: str) -> int:
        return self._rank[taxon]

    def less(self, x: str, y: str) -> bool:
        return self._rank[x] < self._rank[y]

    def min(self, taxa: Iterable[str]) -> str:
        return min(taxa, key=self._rank.__getitem__)

    @property
    def smallest(self) -> str:
        return self.sequence[0]

    @property
    def largest(self) -> str:
        return self.sequence[-1]

    @property
    def taxa(self) -> frozenset[str]:
        return frozenset(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def __len__(self):
        return len(self.sequence)

    def __eq__(self, other):
        return isinstance(other, Ordering) and other.sequence == self.sequence

    def __hash__(self):
        return hash(self.sequence)

    def __repr__(self):
        return "Ordering(" + "<".join(self.sequence) + ")"


def _check_taxa(tree: BinaryTree, ordering: Ordering):
    if tree.taxa != ordering.taxa:
        raise TaxonError(f"tree taxa {sorted(tree.taxa)} != ordering taxa "
                         f"{sorted(ordering.taxa)}")


def label_internal_nodes(tree: BinaryTree, ordering: Ordering) -> dict[int, str]:
    """Map each non-leaf node id (root included) to its taxon label."""
    _check_taxa(tree, ordering)
    smallest: dict[int, str] = {}
    labels: dict[int, str] = {}
    for v in reversed(tree.topological_order()):
        kids = tree.children(v)
        if not kids:
            smallest[v] = tree.labels[v]
            continue
        mins = [smallest[c] for c in kids]
        smallest[v] = ordering.min(mins)
        if v != tree.root:
            labels[v] = max(mins, key=ordering.rank)
    labels[tree.root] = ordering.smallest
    return labels


def lineage_taxon_strings(tree: BinaryTree, ordering: Ordering) -> dict[str, tuple[str, ...]]:
    labels = label_internal_nodes(tree, ordering)
    result: dict[str, tuple[str, ...]] = {}
    for taxon in ordering:
        v = tree.parents(tree.leaf_of(taxon))[0]
        path = []
        while labels[v] != taxon:
            path.append(labels[v])
            v = tree.parents(v)[0]
        result[taxon] = tuple(reversed(path))
    return result


def check_c1_c2(strings: Mapping[str, Sequence[str]], ordering: Ordering) -> bool:
    if set(strings) - ordering.taxa:
        return False
    for taxon in ordering:
        s = strings.get(taxon, ())
        if any(sym not in ordering.taxa or not ordering.less(taxon, sym) for sym in s):
            return False
    return not strings.get(ordering.largest, ())


def reconstruct_permutation(strings: Mapping[str, Sequence[str]], ordering: Ordering,
                            reserved: str) -> tuple[str, ...]:
    """Recover ``P`` from the LTS map of the line tree ``T(P)``.

    Walks the anchor chain from the smallest taxon: each non-final anchor
    contributes its LTS minus the last letter followed by itself, and the next
    anchor is that last letter.
    """
    if reserved not in ordering.taxa:
        raise TaxonError(f"reserved taxon {reserved!r} is not in the ordering")
    if set(strings) - ordering.taxa:
        raise ProfileError(f"profile keys outside the ordering: "
                           f"{sorted(set(strings) - ordering.taxa)}")
    core = ordering.taxa - {reserved}
    if ordering.smallest == reserved:
        result = tuple(strings.get(reserved, ()))
        extra = [x for x in core if strings.get(x)]
        if extra:
            raise ProfileError(f"reserved taxon is smallest but {sorted(extra)} have "
                               "non-empty strings")
    else:
        out: list[str] = []
        anchor = ordering.smallest
        used = set()
        while True:
            if anchor in used:
                raise ProfileError(f"anchor chain revisits {anchor!r}")
            used.add(anchor)
            s = tuple(strings.get(anchor, ()))
            if not s:
                raise ProfileError(f"anchor {anchor!r} has an empty string")
            if anchor == reserved:
                out.extend(s)
                break
            out.extend(s[:-1])
            out.append(anchor)
            nxt = s[-1]
            if nxt == reserved and not strings.get(reserved):
                break
            if not ordering.less(anchor, nxt):
                raise ProfileError(f"anchor chain does not increase at {anchor!r}->{nxt!r}")
            anchor = nxt
        idle = [x for x in ordering.taxa - used if strings.get(x)]
        if idle:
            raise ProfileError(f"non-empty strings off the anchor chain: {sorted(idle)}")
        result = tuple(out)
    if len(result) != len(core) or set(result) != core:
        raise ProfileError("profile does not describe a line tree: reconstructed "
                           f"{result} is not a permutation of {sorted(core)}")
    return result
