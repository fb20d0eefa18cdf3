"""Shortest common supersequences: exact lattice search, greedy heuristic, brute force."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from .errors import CapacityError

DEFAULT_STATE_BUDGET = 10**7

Strings = Sequence[Sequence[str]]


def is_supersequence(sup: Sequence[str], sub: Sequence[str]) -> bool:
    it = iter(sup)
    return all(any(c == s for c in it) for s in sub)


def _alphabet(strings: Strings, alphabet: Sequence[str] | None) -> list[str]:
    present = {c for s in strings for c in s}
    if alphabet is None:
        return sorted(present)
    missing = present - set(alphabet)
    if missing:
        raise ValueError(f"symbols {sorted(missing)} are not in the alphabet")
    return [c for c in alphabet if c in present]


def _distance_table(strings: Strings, budget: int):
    """Distance-to-goal over the lattice of position vectors.

    Returns a function ``dist(state)`` plus the successor function.
    """
    strings = [tuple(s) for s in strings]
    states = math.prod(len(s) + 1 for s in strings)
    if states > budget:
        raise CapacityError(f"exact SCS needs {states} lattice states, budget is {budget}; "
                            "use heuristic mode or raise the state budget")
    goal = tuple(len(s) for s in strings)

    def successors(state):
        heads = {strings[i][p] for i, p in enumerate(state) if p < goal[i]}
        for sym in heads:
            yield sym, tuple(p + 1 if p < goal[i] and strings[i][p] == sym else p
                             for i, p in enumerate(state))

    dist = {goal: 0}
    # iterative post-order DFS; recursion depth would be the total input length
    stack = [(tuple(0 for _ in strings), False)]
    while stack:
        state, expanded = stack.pop()
        if state in dist:
            continue
        if expanded:
            dist[state] = 1 + min(dist[nxt] for _, nxt in successors(state))
            continue
        stack.append((state, True))
        stack.extend((nxt, False) for _, nxt in successors(state) if nxt not in dist)
    return dist, successors


def exact_scs(strings: Strings, alphabet: Sequence[str] | None = None,
              budget: int = DEFAULT_STATE_BUDGET) -> tuple[str, ...]:
    """Minimum-length common supersequence.

    Among all shortest answers, returns the lexicographically smallest with
    respect to ``alphabet`` (default: sorted symbol names).
    """
    rank = {c: i for i, c in enumerate(_alphabet(strings, alphabet))}
    dist, successors = _distance_table(strings, budget)
    state = tuple(0 for _ in strings)
    out = []
    while dist[state]:
        want = dist[state] - 1
        sym, state = min(((sym, nxt) for sym, nxt in successors(state) if dist[nxt] == want),
                         key=lambda pair: rank[pair[0]])
        out.append(sym)
    return tuple(out)


def scs_length(strings: Strings, budget: int = DEFAULT_STATE_BUDGET) -> int:
    dist, _ = _distance_table(strings, budget)
    return dist[tuple(0 for _ in strings)]


def majority_merge(strings: Strings, alphabet: Sequence[str] | None = None) -> tuple[str, ...]:
    """Greedy common supersequence: repeatedly emit the most frequent head symbol."""
    rank = {c: i for i, c in enumerate(_alphabet(strings, alphabet))}
    rest = [list(s) for s in strings if s]
    out = []
    while rest:
        counts: dict[str, int] = {}
        for s in rest:
            counts[s[0]] = counts.get(s[0], 0) + 1
        sym = min(counts, key=lambda c: (-counts[c], rank[c]))
        out.append(sym)
        rest = [s[1:] if s[0] == sym else s for s in rest]
        rest = [s for s in rest if s]
    return tuple(out)


def exhaustive_scs_oracle(strings: Strings, max_len: int,
                          alphabet: Sequence[str] | None = None,
                          prune: bool = True) -> tuple[str, ...] | None:
    """First common supersequence in length-then-lexicographic enumeration order.

    Test oracle only: enumerates strings over the input symbols and checks each
    with :func:`is_supersequence`. With ``prune`` the enumeration skips prefixes
    that cannot extend to a supersequence of the current target length (a symbol
    heading no remaining string, or too few positions left); a shortest
    supersequence never contains such a symbol, so the answer is unchanged.
    """
    symbols = _alphabet(strings, alphabet)
    strings = [tuple(s) for s in strings]
    for length in range(max_len + 1):
        if prune:
            found = _pruned_search(strings, symbols, length)
            if found is not None:
                return found
            continue
        for cand in itertools.product(symbols, repeat=length):
            if all(is_supersequence(cand, s) for s in strings):
                return cand
    return None


def _pruned_search(strings, symbols, length):
    prefix: list[str] = []

    def extend(rest):
        left = length - len(prefix)
        need = max(map(len, rest), default=0)
        if need == 0:
            return left == 0 or None
        if need > left or len({c for s in rest for c in s}) > left:
            return None
        heads = {s[0] for s in rest if s}
        for sym in symbols:
            if sym not in heads:
                continue
            prefix.append(sym)
            if extend([s[1:] if s and s[0] == sym else s for s in rest]):
                return True
            prefix.pop()
        return None

    if extend(strings):
        cand = tuple(prefix)
        assert all(is_supersequence(cand, s) for s in strings)
        return cand
    return None


def scs(strings: Strings, alphabet: Sequence[str] | None = None, heuristic: bool = False,
        budget: int = DEFAULT_STATE_BUDGET) -> tuple[str, ...]:
    if heuristic:
        return majority_merge(strings, alphabet)
    return exact_scs(strings, alphabet, budget)


def distinct_symbols(strings: Iterable[Sequence[str]]) -> int:
    return len({c for s in strings for c in s})
