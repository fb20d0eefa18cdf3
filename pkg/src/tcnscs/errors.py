"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the hierarchy shallow.
"""


class TcnError(Exception):
    """Base class for all domain errors raised by this package."""


class StructureError(TcnError, ValueError):
    """A graph violates the phylogenetic network / binary tree invariants."""

    def __init__(self, message, nodes=()):
        self.nodes = tuple(nodes)
        if self.nodes:
            message = f"{message} (nodes: {', '.join(map(str, self.nodes))})"
        super().__init__(message)


class NewickError(TcnError, ValueError):
    """Malformed Newick / extended Newick text."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class TaxonError(TcnError, ValueError):
    """Taxon sets disagree, or a name is not a valid taxon."""


class CapacityError(TcnError):
    """A configured search/state budget would be exceeded."""


class NotInImageError(TcnError, ValueError):
    """A value is not in the image of the codec being inverted."""


class ProfileError(TcnError, ValueError):
    """A string profile is inconsistent (C1/C2 violation, broken anchor chain)."""


class WitnessError(TcnError, ValueError):
    """A supersequence witness fails its precondition or postcondition."""
