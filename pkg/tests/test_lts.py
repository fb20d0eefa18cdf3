import itertools
import random
from collections import Counter

import pytest
from helpers import ELL, T, all_nested_trees, nested_to_tree

from tcnscs import (Ordering, ProfileError, check_c1_c2, label_internal_nodes,
                    lineage_taxon_strings, parse_newick, reconstruct_permutation)
from tcnscs.errors import TaxonError


def spine_labels(tree, ordering):
    labels = label_internal_nodes(tree, ordering)
    return "".join(labels[v] for v in range(1, len(tree.taxa)))


def as_text(lts):
    return {x: "".join(s) for x, s in lts.items()}


def test_labels_edabc():
    tree = T("edabc")
    labels = label_internal_nodes(tree, Ordering("abcdel"))
    assert labels[tree.root] == "a"
    assert spine_labels(tree, Ordering("abcdel")) == "edbcl"


def test_labels_cherry():
    tree = parse_newick("((a,b));")
    labels = label_internal_nodes(tree, Ordering("ab"))
    assert sorted(labels.values()) == ["a", "b"]
    assert labels[tree.root] == "a"


def test_labels_eadbc():
    # min/larger rule by hand: v5 ~ {c,l} -> l, v4 ~ {b | c} -> c, v3 ~ {d | b} -> d,
    # v2 ~ {a | b} -> b, v1 ~ {e | a} -> e
    assert spine_labels(T("eadbc"), Ordering("abclde")) == "ebdcl"


def test_labels_taxon_mismatch():
    with pytest.raises(TaxonError):
        label_internal_nodes(T("abc"), Ordering("abcd"))


def test_lts_edabc():
    got = as_text(lineage_taxon_strings(T("edabc"), Ordering("abcdel")))
    assert got == {"a": "edb", "b": "c", "c": "l", "d": "", "e": "", "l": ""}


def test_lts_eadbc():
    got = as_text(lineage_taxon_strings(T("eadbc"), Ordering("abclde")))
    assert got == {"a": "eb", "b": "dc", "c": "l", "l": "", "d": "", "e": ""}


@pytest.mark.parametrize("perm", ["eadbc", "caebd", "cabed", "a", "ba"])
def test_lts_reserved_smallest(perm):
    ordering = Ordering([ELL] + sorted(perm))
    got = as_text(lineage_taxon_strings(T(perm), ordering))
    assert got[ELL] == perm
    assert all(s == "" for x, s in got.items() if x != ELL)


def test_c1_c2():
    ordering = Ordering("abcdel")
    assert check_c1_c2(lineage_taxon_strings(T("edabc"), ordering), ordering)
    assert not check_c1_c2({"a": "a"}, ordering)
    assert not check_c1_c2({"a": "b", "l": "a"}, ordering)
    assert not check_c1_c2({"b": "a"}, ordering)
    assert not check_c1_c2({"z": ""}, ordering)


def test_reconstruct_examples():
    ordering = Ordering("abcdel")
    lts = {"a": "edb", "b": "c", "c": "l", "d": "", "e": "", "l": ""}
    assert "".join(reconstruct_permutation(lts, ordering, ELL)) == "edabc"
    ell_first = {"l": "caebd", "a": "", "b": "", "c": "", "d": "", "e": ""}
    assert "".join(reconstruct_permutation(ell_first, Ordering("labcde"), ELL)) == "caebd"
    column = {"a": "cb", "b": "el", "c": "", "l": "d", "d": "", "e": ""}
    assert "".join(reconstruct_permutation(column, Ordering("abclde"), ELL)) == "caebd"


@pytest.mark.parametrize("profile", [
    {"a": "", "b": "c"},                         # chain starts empty
    {"a": "b", "b": "c", "c": "", "l": ""},      # chain ends without the reserved taxon
    {"a": "c", "b": "l", "c": "l", "l": ""},     # b is off the chain but non-empty
    {"a": "bl", "b": "", "c": "", "l": ""},      # not a permutation of the core
])
def test_reconstruct_rejects_bad_profiles(profile):
    with pytest.raises(ProfileError):
        reconstruct_permutation(profile, Ordering("abcl"), ELL)


@pytest.mark.parametrize("n", range(1, 5))
def test_reconstruct_round_trip_exhaustive(n):
    sigma = "abcd"[:n]
    for perm in itertools.permutations(sigma):
        tree = T(perm)
        for order in itertools.permutations(sigma + ELL):
            ordering = Ordering(order)
            assert reconstruct_permutation(lineage_taxon_strings(tree, ordering), ordering,
                                           ELL) == perm


def test_reconstruct_round_trip_six_symbols_sampled():
    rng = random.Random(6)
    sigma = list("abcdef")
    for _ in range(3000):
        perm = tuple(rng.sample(sigma, 6))
        ordering = Ordering(rng.sample(sigma + [ELL], 7))
        lts = lineage_taxon_strings(T(perm), ordering)
        assert reconstruct_permutation(lts, ordering, ELL) == perm


@pytest.mark.parametrize("n", range(1, 6))
def test_lts_symbol_multiset_and_conditions(n):
    """Each taxon but the smallest occurs exactly once across a tree's strings."""
    taxa = "abcde"[:n]
    rng = random.Random(n)
    for nested in all_nested_trees(taxa):
        tree = nested_to_tree(nested)
        orders = list(itertools.permutations(taxa))
        for order in rng.sample(orders, min(24, len(orders))):
            ordering = Ordering(order)
            lts = lineage_taxon_strings(tree, ordering)
            symbols = Counter(x for s in lts.values() for x in s)
            assert symbols == Counter(order[1:])
            assert check_c1_c2(lts, ordering)
