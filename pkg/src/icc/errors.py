"""Exceptions shared across solver modules."""


class CapExceededError(RuntimeError):
    """Instance too large for an exact solver's configured cap."""


class BidirectionalArcError(ValueError):
    """Operation defined only for digraphs without bidirectional arcs."""


class SchemeInvariantError(AssertionError):
    """A cross-scheme sanity relation failed; indicates a solver bug."""
