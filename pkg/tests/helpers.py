"""Tree generators and small brute-force utilities shared by the tests."""

import itertools
import random

from tcnscs import BinaryTree, line_tree_from_permutation

ELL = "l"


def T(perm, ell=ELL):
    return line_tree_from_permutation(perm, ell)


def nested_to_tree(nested):
    """``("a", ("b", "c"))`` -> BinaryTree with an outdegree-1 root above the top node."""
    edges, labels = [], {}
    counter = itertools.count(1)

    def build(node):
        v = next(counter)
        if isinstance(node, str):
            labels[v] = node
        else:
            for child in node:
                edges.append((v, build(child)))
        return v

    top = build(nested)
    edges.append((0, top))
    return BinaryTree(edges, labels)


def all_nested_trees(taxa):
    """Every rooted binary tree on ``taxa``, each isomorphism class once (leaf insertion)."""
    taxa = list(taxa)
    if len(taxa) == 1:
        yield taxa[0]
        return
    for smaller in all_nested_trees(taxa[:-1]):
        yield from _insert_everywhere(smaller, taxa[-1])


def _insert_everywhere(node, leaf):
    yield (node, leaf)
    if not isinstance(node, str):
        left, right = node
        for new in _insert_everywhere(left, leaf):
            yield (new, right)
        for new in _insert_everywhere(right, leaf):
            yield (left, new)


def shuffled_ids(tree, rng):
    ids = list(tree.nodes)
    new = ids[:]
    rng.shuffle(new)
    m = {a: b + 100 for a, b in zip(ids, new)}
    edges = [(m[u], m[v]) for u, v in tree.edges]
    rng.shuffle(edges)
    return BinaryTree(edges, {m[v]: n for v, n in tree.labels.items()})


def random_line_instance(rng, n, k, symbols="abcde"):
    sigma = list(symbols[:n])
    return ["".join(rng.sample(sigma, n)) for _ in range(k)]


def line_tree_instances():
    """50 seeded random instances (k <= 3, n <= 5) plus every set of <= 3 perms with n <= 3."""
    rng = random.Random(20231016)
    out = []
    for _ in range(50):
        n = rng.choice([2, 3, 4, 5, 5, 5])
        k = rng.randint(1, 3)
        out.append(tuple(random_line_instance(rng, n, k)))
    for n in (1, 2, 3):
        perms = ["".join(p) for p in itertools.permutations("abc"[:n])]
        for k in (1, 2, 3):
            out.extend(itertools.combinations(perms, k))
    return out


def valid_2scs_grid(max_n=3, max_strings=3, budgets=range(6)):
    """Every 2-SCS instance on up to ``max_n`` symbols with no symbol shared by all strings."""
    from tcnscs import TwoScsInstance

    for n in range(1, max_n + 1):
        x = tuple("abcdef"[:n])
        strings = list(itertools.permutations(x, 2))
        for size in range(1, max_strings + 1):
            for chosen in itertools.combinations(strings, size):
                if set.intersection(*(set(s) for s in chosen)):
                    continue
                for k in budgets:
                    yield TwoScsInstance(x, chosen, k)


def _restricted_growth(length, symbols):
    """Words whose symbols first appear in alphabet order (one per renaming class)."""
    def grow(prefix, used):
        if len(prefix) == length:
            yield prefix
            return
        for v in range(min(used + 1, symbols)):
            yield from grow(prefix + [v], max(used, v + 1))

    yield from grow([], 0)


def scs_grid(n_strings, max_len, symbols="abcd"):
    """SCS instances up to renaming symbols and reordering strings.

    Strings are sorted by length and their concatenation uses symbols in order
    of first appearance. Every instance of the full grid is a renamed and
    reordered copy of some representative, so it has the same SCS length.
    """
    for lens in itertools.combinations_with_replacement(range(max_len + 1), n_strings):
        for word in _restricted_growth(sum(lens), len(symbols)):
            out, i = [], 0
            for n in lens:
                out.append("".join(symbols[v] for v in word[i:i + n]))
                i += n
            yield out
