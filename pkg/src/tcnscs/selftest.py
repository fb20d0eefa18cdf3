"""Golden checks on the worked examples; hermetic, used by ``tcnscs selftest``."""

from __future__ import annotations

import re

from .codec import parse_extended_newick, write_extended_newick
from .construct import construct_network, is_displayed, line_tree_from_permutation, \
    one_component_network
from .lts import Ordering, lineage_taxon_strings, reconstruct_permutation
from .model import hybridization_number, is_tree_child, networks_isomorphic
from .scs import scs_length
from .solver import assemble_supersequence, lts_profile, solve_line_trees_fast, solve_min_tcn

ELL = "l"
TRIO_PERMS = ("eadbc", "caebd", "cabed")
TRIO_ORDER = "abclde"
TRIO_TABLE = {
    "a": ("eb", "cb", "cb"),
    "b": ("dc", "el", "l"),
    "c": ("l", "", ""),
    "l": ("", "d", "ed"),
    "d": ("", "", ""),
    "e": ("", "", ""),
}
TRIO_SCS_LENGTHS = {"a": 3, "b": 4, "c": 1, "l": 2, "d": 0, "e": 0}
TRIO_BETAS = {"a": "ecb", "b": "dcel", "c": "l", "l": "ed", "d": "", "e": ""}
TRIO_Q = "ecadebced"


def _trio_trees():
    return [line_tree_from_permutation(p, ELL) for p in TRIO_PERMS]


def edabc_lts():
    got = lineage_taxon_strings(line_tree_from_permutation("edabc", ELL), Ordering("abcdel"))
    want = {"a": "edb", "b": "c", "c": "l", "d": "", "e": "", "l": ""}
    return {x: "".join(s) for x, s in got.items()} == want


def edabc_reconstruct():
    lts = lineage_taxon_strings(line_tree_from_permutation("edabc", ELL), Ordering("abcdel"))
    return "".join(reconstruct_permutation(lts, Ordering("abcdel"), ELL)) == "edabc"


def trio_table():
    profile = lts_profile(_trio_trees(), Ordering(TRIO_ORDER))
    cells = {x: tuple("".join(s) for s in row) for x, row in profile.alphas.items()}
    lengths = {x: len(b) for x, b in profile.betas.items()}
    return cells == TRIO_TABLE and lengths == TRIO_SCS_LENGTHS


def trio_network():
    net = construct_network(Ordering(TRIO_ORDER), TRIO_BETAS)
    return (hybridization_number(net) == 5 and is_tree_child(net)
            and all(is_displayed(t, net) for t in _trio_trees()))


def trio_q_network():
    net = one_component_network(TRIO_Q, "abcde", ELL)
    return (hybridization_number(net) == 4 and is_tree_child(net)
            and all(is_displayed(t, net) for t in _trio_trees()))


def trio_assembly():
    q = assemble_supersequence(_trio_trees(), Ordering(TRIO_ORDER), ELL,
                               w_choices={"a": "ecb", "b": "delc"})
    return "".join(q) == TRIO_Q


def trio_optimum():
    trees = _trio_trees()
    best = scs_length(TRIO_PERMS) - 5
    fast = solve_line_trees_fast(trees, ELL)
    return solve_min_tcn(trees).hn == best == fast.hn and best <= 4


def ababc_round_trip():
    net = one_component_network("ababc", "abc", ELL)
    text = write_extended_newick(net)
    return (hybridization_number(net) == 2 and len(set(re.findall(r"#H\d+", text))) == 2
            and networks_isomorphic(parse_extended_newick(text), net))


CHECKS = [
    ("lineage taxon strings of T(edabc)", edabc_lts),
    ("permutation reconstruction of edabc", edabc_reconstruct),
    ("three-tree LTS table and SCS lengths", trio_table),
    ("three-tree construction: HN 5, tree-child, displays inputs", trio_network),
    ("N(ecadebced): HN 4, tree-child, displays inputs", trio_q_network),
    ("three-tree supersequence assembly", trio_assembly),
    ("three-tree optimum equals SCS length - n", trio_optimum),
    ("N(ababc) extended Newick round trip", ababc_round_trip),
]


def run_checks():
    results = []
    for name, check in CHECKS:
        try:
            ok = bool(check())
        except Exception as exc:  # a crash is a failed check, reported by name
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        results.append((name, ok))
    return results
