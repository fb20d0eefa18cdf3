"""Text formats: Newick, extended Newick, symbol strings and the JSON instance file."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NewickError, StructureError, TaxonError
from .model import BinaryTree, PhyloNetwork, TaxonSet, check_taxon

DEFAULT_RESERVED = "_ell"

_LABEL_RE = re.compile(r"[^\s(),;:#]*")
_TAG_RE = re.compile(r"#H(\d+)")


# -- symbol strings ----------------------------------------------------------

def split_symbols(text: str) -> tuple[str, ...]:
    """``"edabc"`` -> one symbol per character; ``"y1.y2.a"`` -> dot separated."""
    if not text:
        return ()
    if "." in text:
        return tuple(text.split("."))
    return tuple(text)


def render_symbols(symbols: Iterable[str]) -> str:
    symbols = list(symbols)
    if all(len(s) == 1 for s in symbols):
        return "".join(symbols)
    return ".".join(symbols)


# -- parsing -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, hybrids: bool):
        self.text = text
        self.pos = 0
        self.hybrids = hybrids
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[int, str] = {}
        self.leaf_at: dict[str, int] = {}
        self.tags: dict[str, dict] = {}
        self.next_id = 0

    def fail(self, msg, offset=None):
        raise NewickError(msg, self.pos if offset is None else offset)

    def new_node(self):
        self.next_id += 1
        return self.next_id

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def read_label(self):
        """Returns (name, tag, start offset)."""
        self.skip_ws()
        start = self.pos
        name = _LABEL_RE.match(self.text, self.pos).group()
        self.pos += len(name)
        tag = None
        if self.text.startswith("#", self.pos):
            m = _TAG_RE.match(self.text, self.pos)
            if not m:
                self.fail("malformed hybrid tag (expected #H<k>)")
            if not self.hybrids:
                self.fail("hybrid tags are not allowed in a tree")
            tag = "H" + m.group(1)
            self.pos = m.end()
        if self.peek() == ":":
            self.fail("branch lengths are not supported")
        return name, tag, start

    def subtree(self, top=False):
        """Parse one node and return its id."""
        start = self.pos
        if self.peek() == "(":
            self.pos += 1
            kids = [self.subtree()]
            while self.peek() == ",":
                self.pos += 1
                kids.append(self.subtree())
            if self.peek() != ")":
                self.fail("unbalanced parentheses: expected ')' or ','")
            self.pos += 1
            name, tag, lab_at = self.read_label()
            if name:
                self.fail("internal node labels are not supported", lab_at)
            if tag is not None:
                if len(kids) != 1:
                    self.fail(f"reticulate node #{tag} must have exactly one child", start)
                return self.hybrid(tag, start, kids[0])
            if len(kids) > 2:
                self.fail("non-binary node", start)
            if len(kids) == 1 and not top:
                self.fail("unary internal node", start)
            v = self.new_node()
            self.edges.extend((v, k) for k in kids)
            return v
        name, tag, lab_at = self.read_label()
        if tag is not None:
            if name:
                self.fail("reticulate leaves are not supported", lab_at)
            return self.hybrid(tag, lab_at, None)
        if not name:
            self.fail("empty label", lab_at)
        if name in self.leaf_at:
            self.fail(f"duplicate leaf label {name!r} (first at offset {self.leaf_at[name]})",
                      lab_at)
        v = self.new_node()
        self.labels[v] = name
        self.leaf_at[name] = lab_at
        return v

    def hybrid(self, tag, offset, child):
        """Register one occurrence of a hybrid tag; ``child`` is set for the definition."""
        entry = self.tags.get(tag)
        if entry is None:
            entry = self.tags[tag] = {"id": self.new_node(), "refs": [], "def_at": None}
        entry["refs"].append(offset)
        if child is not None:
            if entry["def_at"] is not None:
                self.fail(f"tag #{tag} redefined with conflicting children (first definition "
                          f"at offset {entry['def_at']})", offset)
            entry["def_at"] = offset
            self.edges.append((entry["id"], child))
        return entry["id"]

    def parse(self):
        if self.peek() == "":
            self.fail("empty input")
        top = self.subtree(top=True)
        if self.peek() != ";":
            self.fail("expected ';' (unbalanced parentheses or trailing text)")
        self.pos += 1
        if self.peek() != "":
            self.fail("trailing text after ';'")
        top_kids = [v for u, v in self.edges if u == top]
        if top in self.labels or len(top_kids) == 2:
            root = self.new_node()
            self.edges.append((root, top))
        for tag, entry in sorted(self.tags.items()):
            if entry["def_at"] is None:
                raise NewickError(f"tag #{tag} is never defined", entry["refs"][0])
            if len(entry["refs"]) < 2:
                raise NewickError(f"tag #{tag} referenced once only (indegree-1 reticulation)",
                                  entry["refs"][0])
        return self.edges, self.labels


def _build(text: str, hybrids: bool) -> PhyloNetwork:
    parser = _Parser(text, hybrids)
    edges, labels = parser.parse()
    try:
        return PhyloNetwork(edges, labels)
    except StructureError as exc:
        offsets = [e["def_at"] for e in parser.tags.values() if e["id"] in exc.nodes]
        raise NewickError(str(exc), min(offsets, default=0)) from exc


def parse_newick(text: str) -> BinaryTree:
    """Parse rooted binary Newick; an outdegree-1 root is added above a binary top node."""
    return BinaryTree.from_network(_build(text, hybrids=False))


def parse_extended_newick(text: str) -> PhyloNetwork:
    net = _build(text, hybrids=True)
    if not net.reticulate_nodes():
        return BinaryTree.from_network(net)
    return net


# -- writing -----------------------------------------------------------------

def _sort_keys(net: PhyloNetwork) -> dict[int, tuple]:
    below: dict[int, frozenset[str]] = {}
    for v in reversed(net.topological_order()):
        kids = net.children(v)
        if not kids:
            below[v] = frozenset([net.labels[v]])
        else:
            below[v] = frozenset().union(*(below[c] for c in kids))
    return {v: (min(s), tuple(sorted(s)), v) for v, s in below.items()}


def write_newick(tree: BinaryTree) -> str:
    if tree.reticulate_nodes():
        raise StructureError("write_newick needs a tree", tree.reticulate_nodes())
    return write_extended_newick(tree)


def write_extended_newick(net: PhyloNetwork) -> str:
    """Deterministic extended Newick; children ordered by smallest descendant leaf.

    Hybrid tags are numbered along a topological order of the reticulate nodes.
    """
    import heapq

    keys = _sort_keys(net)
    indeg = {v: len(net.parents(v)) for v in net.nodes}
    heap = [keys[net.root]]
    tags: dict[int, int] = {}
    while heap:
        v = heapq.heappop(heap)[-1]
        if len(net.parents(v)) >= 2:
            tags[v] = len(tags) + 1
        for c in net.children(v):
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, keys[c])
    seen: set[int] = set()

    def emit(v):
        kids = sorted(net.children(v), key=keys.__getitem__)
        if v in tags:
            if v in seen:
                return f"#H{tags[v]}"
            seen.add(v)
            return "(" + emit(kids[0]) + f")#H{tags[v]}"
        if not kids:
            return net.labels[v]
        return "(" + ",".join(emit(c) for c in kids) + ")"

    return emit(net.root) + ";"


# -- degree-2 suppression ----------------------------------------------------

def suppress_degree2(net: PhyloNetwork, only: Iterable[int] | None = None,
                     check: bool = False) -> PhyloNetwork:
    """Contract every indegree-1/outdegree-1 node until none is left.

    ``only`` restricts contraction to the given node ids. Contractions that
    would create a parallel edge raise :class:`StructureError`.
    """
    kids: dict[int, list[int]] = {v: list(net.children(v)) for v in net.nodes}
    pars: dict[int, list[int]] = {v: list(net.parents(v)) for v in net.nodes}
    candidates = list(net.nodes if only is None else only)
    allowed = None if only is None else set(candidates)
    removed = set()
    while candidates:
        v = candidates.pop()
        if v in removed or len(pars[v]) != 1 or len(kids[v]) != 1:
            continue
        u, w = pars[v][0], kids[v][0]
        if w in kids[u]:
            raise StructureError("contraction would create a parallel edge", [u, v, w])
        kids[u][kids[u].index(v)] = w
        pars[w][pars[w].index(v)] = u
        removed.add(v)
        for x in (u, w):
            if allowed is None or x in allowed:
                candidates.append(x)
    edges = [(u, w) for u in net.nodes if u not in removed for w in kids[u]]
    labels = {v: n for v, n in net.labels.items() if v not in removed}
    return PhyloNetwork(edges, labels, check=check)


# -- instance file -----------------------------------------------------------

@dataclass
class InstanceFile:
    """JSON container for tree / string problem instances."""

    alphabet: list[str]
    trees: list[str] = field(default_factory=list)
    reserved: str | None = None
    strings: list[str] | None = None
    budget: int | None = None

    def __post_init__(self):
        taxa = TaxonSet(tuple(self.alphabet), self.reserved)
        for i, text in enumerate(self.trees):
            stray = parse_newick(text).taxa - set(taxa)
            if stray:
                raise TaxonError(f"tree {i} uses taxa outside the alphabet: {sorted(stray)}")
        for s in self.strings or ():
            stray = set(split_symbols(s)) - set(taxa)
            if stray:
                raise TaxonError(f"string {s!r} uses symbols outside the alphabet: {sorted(stray)}")
        if self.budget is not None and (not isinstance(self.budget, int) or self.budget < 0):
            raise ValueError(f"budget must be a non-negative integer, got {self.budget!r}")

    @property
    def taxon_set(self) -> TaxonSet:
        return TaxonSet(tuple(self.alphabet), self.reserved)

    def parsed_trees(self) -> list[BinaryTree]:
        return [parse_newick(t) for t in self.trees]

    def parsed_strings(self) -> list[tuple[str, ...]]:
        return [split_symbols(s) for s in self.strings or ()]

    @classmethod
    def from_json(cls, text: str) -> "InstanceFile":
        data = json.loads(text)
        if not isinstance(data, dict) or "alphabet" not in data:
            raise ValueError("instance file must be a JSON object with an 'alphabet' key")
        unknown = set(data) - {"alphabet", "reserved", "trees", "strings", "budget"}
        if unknown:
            raise ValueError(f"unknown instance keys: {sorted(unknown)}")
        return cls(alphabet=list(data["alphabet"]), trees=list(data.get("trees", [])),
                   reserved=data.get("reserved"), strings=data.get("strings"),
                   budget=data.get("budget"))

    def to_json(self) -> str:
        data = {"alphabet": self.alphabet}
        if self.reserved is not None:
            data["reserved"] = self.reserved
        data["trees"] = self.trees
        if self.strings is not None:
            data["strings"] = self.strings
        if self.budget is not None:
            data["budget"] = self.budget
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def parse_symbols_in(text: str, alphabet: Sequence[str]) -> tuple[str, ...]:
    symbols = split_symbols(text)
    stray = sorted(set(symbols) - set(alphabet))
    if stray:
        raise TaxonError(f"symbols {stray} are not in the alphabet")
    for s in symbols:
        check_taxon(s)
    return symbols
