"""Exception hierarchy for the triortho package.

Every error raised by the library derives from TriorthoError so callers can
catch the whole family with one clause.
"""


class TriorthoError(Exception):
    """Base class for all triortho errors."""


class ModeMismatch(TriorthoError):
    """Exact and float scalars were mixed in one arithmetic operation."""


class DivideByZero(TriorthoError):
    """Division by an exact or float zero."""


class SingularMap(TriorthoError):
    """Affine map has zero determinant and cannot be inverted."""


class DegenerateTriangle(TriorthoError):
    """Triangle vertices are collinear or repeated."""


class BadBaseIndex(TriorthoError):
    """Orthogonal basis variant index outside 1..6."""


class IndexOutOfRange(TriorthoError):
    """Polynomial family index outside its valid range (e.g. k > n)."""


class NotDivisible(TriorthoError):
    """Polynomial division that must be exact left a remainder."""


class ZeroNormalizer(TriorthoError):
    """Internal error: a basis normalization constant evaluated to zero."""


class NoSharedEdge(TriorthoError):
    """Two triangles passed as adjacent do not share exactly one edge."""


class DegenerateConfiguration(TriorthoError):
    """Fourth vertex placement makes the pair geometrically degenerate."""


class InvalidPatch(TriorthoError):
    """Ring vertices do not form a valid triangle patch around the center."""


class InconsistentParams(TriorthoError):
    """Numeric parameters violate a documented precondition (e.g. c = d)."""


class EmptyFamily(TriorthoError):
    """An intersection of an empty list of spaces was requested."""


class ParseError(TriorthoError):
    """Malformed scalar string, patch file, or CLI argument."""
