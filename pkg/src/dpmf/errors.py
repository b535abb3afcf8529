"""Exception types shared across the toolkit.

Input-side problems (malformed files, invalid trees) and contract
violations get distinct classes so callers can react differently:
the command-line driver maps input errors to exit code 1 and anything
else to exit code 2.
"""


class DpmfError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DpmfError):
    """Malformed content in an input file; message carries location info."""


class TreeValidityError(DpmfError):
    """Head links do not form a single-rooted tree (cycle, multi-root, bad index)."""


class ProjectivityError(DpmfError):
    """Well-formed tree, but with crossing arcs; not derivable by this transition system."""


class IllegalActionError(DpmfError):
    """A transition was applied in a state where it is not legal."""


class OracleStuckError(DpmfError):
    """The static oracle reached a state with no applicable rule."""


class EmptyHypothesisError(DpmfError):
    """Decoding was asked to parse a hypothesis with no tokens."""


class UndefinedCorrelationError(DpmfError):
    """A correlation coefficient is undefined for the given data."""
