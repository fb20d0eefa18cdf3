"""Reduction from 2-SCS to SCS on permutations, and on to line-tree TCN instances.

A length-2 string ``ab`` over ``X`` becomes the permutation
``a b . y1..yN . (X without a, b)`` with ``N = n + k + 1`` fresh separators;
the budget becomes ``k + N + n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .codec import DEFAULT_RESERVED
from .construct import line_tree_from_permutation
from .errors import TaxonError, WitnessError
from .model import BinaryTree, TaxonSet
from .scs import DEFAULT_STATE_BUDGET, exact_scs, is_supersequence, scs_length
from .solver import solve_line_trees_fast

Word = tuple[str, ...]


@dataclass(frozen=True)
class TwoScsInstance:
    """Length-2 strings over ``alphabet`` with budget ``k``.

    The hardness argument needs that no symbol occurs in every string; such
    instances are rejected unless ``allow_universal`` is set.
    """

    alphabet: Word
    strings: tuple[Word, ...]
    budget: int
    allow_universal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "strings", tuple(tuple(s) for s in self.strings))
        TaxonSet(self.alphabet)
        if not self.strings:
            raise ValueError("2-SCS instance has no strings")
        for s in self.strings:
            if len(s) != 2 or s[0] == s[1]:
                raise ValueError(f"string {s} is not two distinct symbols")
            if not set(s) <= set(self.alphabet):
                raise TaxonError(f"string {s} uses symbols outside the alphabet")
        if not isinstance(self.budget, int) or self.budget < 0:
            raise ValueError(f"budget must be a non-negative integer, got {self.budget!r}")
        if self.universal_symbols and not self.allow_universal:
            raise ValueError(f"symbols {sorted(self.universal_symbols)} occur in every string")

    @property
    def universal_symbols(self) -> frozenset[str]:
        return frozenset.intersection(*(frozenset(s) for s in self.strings))


@dataclass(frozen=True)
class PermutationScsInstance:
    source: TwoScsInstance
    separators: Word
    permutations: tuple[Word, ...]
    budget: int

    @property
    def alphabet(self) -> Word:
        return self.source.alphabet + self.separators


def encode_2scs(inst: TwoScsInstance, prefix: str = "y") -> PermutationScsInstance:
    x = inst.alphabet
    n, k = len(x), inst.budget
    big_n = n + k + 1
    seps = tuple(f"{prefix}{i}" for i in range(1, big_n + 1))
    clash = sorted(set(seps) & set(x))
    if clash:
        raise TaxonError(f"separator names {clash} collide with the alphabet")
    perms = tuple((a, b) + seps + tuple(c for c in x if c not in (a, b))
                  for a, b in inst.strings)
    return PermutationScsInstance(inst, seps, perms, k + big_n + n)


def forward_witness(inst: TwoScsInstance, witness: Sequence[str],
                    encoded: PermutationScsInstance | None = None) -> Word:
    """``T -> T . Y . X``."""
    t = tuple(witness)
    if len(t) > inst.budget or not all(is_supersequence(t, s) for s in inst.strings):
        raise WitnessError(f"{t} is not a common supersequence of length <= {inst.budget}")
    enc = encoded or encode_2scs(inst)
    out = t + enc.separators + inst.alphabet
    if len(out) > enc.budget or not all(is_supersequence(out, p) for p in enc.permutations):
        raise WitnessError("forward construction failed its own check")
    return out


def split_witness(enc: PermutationScsInstance, witness: Sequence[str]) -> tuple[Word, Word]:
    """Split at the shortest suffix that still contains the separators in order."""
    t = tuple(witness)
    want = len(enc.separators) - 1
    for i in range(len(t) - 1, -1, -1):
        if t[i] == enc.separators[want]:
            want -= 1
            if want < 0:
                return t[:i], t[i:]
    raise WitnessError("witness does not contain the separator sequence")


def decode_witness(enc: PermutationScsInstance, witness: Sequence[str]) -> Word:
    t = tuple(witness)
    if len(t) > enc.budget or not all(is_supersequence(t, p) for p in enc.permutations):
        raise WitnessError(f"witness is not a common supersequence of length <= {enc.budget}")
    prefix, suffix = split_witness(enc, t)
    src = enc.source
    # the length bound only follows when no symbol is in every string
    if not src.universal_symbols and len(suffix) < len(enc.separators) + len(src.alphabet):
        raise WitnessError(f"suffix of length {len(suffix)} is shorter than N + n")
    seps = set(enc.separators)
    decoded = tuple(c for c in prefix if c not in seps)
    if len(decoded) > src.budget or not all(is_supersequence(decoded, s) for s in src.strings):
        raise WitnessError(f"decoded {decoded} is not a common supersequence of length "
                           f"<= {src.budget}")
    return decoded


@dataclass
class EquivalenceReport:
    source_scs: int
    encoded_scs: int
    source_yes: bool
    encoded_yes: bool
    forward: Word | None = None
    decoded: Word | None = None
    error: str | None = None

    @property
    def agree(self) -> bool:
        return self.source_yes == self.encoded_yes and self.error is None

    def to_dict(self) -> dict:
        return {"agree": self.agree, "source_scs": self.source_scs,
                "encoded_scs": self.encoded_scs, "source_yes": self.source_yes,
                "encoded_yes": self.encoded_yes,
                "forward": None if self.forward is None else ".".join(self.forward),
                "decoded": None if self.decoded is None else ".".join(self.decoded),
                "error": self.error}


def verify_equivalence(inst: TwoScsInstance,
                       budget: int = DEFAULT_STATE_BUDGET) -> EquivalenceReport:
    """Decide both sides exactly and push witnesses through both directions."""
    enc = encode_2scs(inst)
    src_best = exact_scs(inst.strings, inst.alphabet, budget)
    enc_best = exact_scs(enc.permutations, enc.alphabet, budget)
    report = EquivalenceReport(len(src_best), len(enc_best),
                               len(src_best) <= inst.budget, len(enc_best) <= enc.budget)
    try:
        if report.source_yes:
            report.forward = forward_witness(inst, src_best, enc)
        if report.encoded_yes:
            report.decoded = decode_witness(enc, enc_best)
    except WitnessError as exc:
        report.error = str(exc)
    return report


def end_to_end_tcn_instance(inst: TwoScsInstance, reserved: str = DEFAULT_RESERVED
                            ) -> tuple[list[BinaryTree], int]:
    """Line trees of the encoded permutations plus the reticulation target ``q``."""
    enc = encode_2scs(inst)
    if reserved in enc.alphabet:
        raise TaxonError(f"reserved taxon {reserved!r} collides with the encoded alphabet")
    trees = [line_tree_from_permutation(p, reserved) for p in enc.permutations]
    return trees, enc.budget - len(enc.alphabet)


def check_end_to_end(inst: TwoScsInstance, reserved: str = DEFAULT_RESERVED,
                     budget: int = DEFAULT_STATE_BUDGET) -> dict:
    trees, q = end_to_end_tcn_instance(inst, reserved)
    report = solve_line_trees_fast(trees, reserved, scs_budget=budget)
    source_yes = scs_length(inst.strings, budget) <= inst.budget
    return {"q": q, "hn": report.hn, "network_yes": report.hn <= q,
            "source_yes": source_yes, "agree": (report.hn <= q) == source_yes}
