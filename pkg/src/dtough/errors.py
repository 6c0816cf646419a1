"""Exception types shared across the package.

Geometric degeneracies that are *data* (a point set failing general
position) are returned as values, not raised; the exceptions here mark
contract violations, refused inputs, and failed constructions.
"""

from __future__ import annotations


class DToughError(Exception):
    """Base class for all package errors."""


class CollinearInput(DToughError):
    """Three collinear points were passed where a proper triangle is required."""


class PreconditionViolated(DToughError):
    """An operation's documented precondition does not hold for the inputs."""


class TooFewPoints(DToughError):
    """Fewer points than the operation can triangulate."""


class DegenerateInput(DToughError):
    """Input point set fails general position. Carries the violation witness."""

    def __init__(self, violation):
        super().__init__(f"degenerate input: {violation}")
        self.violation = violation


class NotInteriorEdge(DToughError):
    """The edge has a single incident face; the check needs two."""


class WitnessSearchFailed(DToughError):
    """No verified empty disk was found for an edge within the search budget."""


class TooLarge(DToughError):
    """Instance exceeds the documented size gate for an exhaustive scan."""


class NotIndependent(DToughError):
    """The supplied vertex set contains an edge of the triangulation."""


class SearchExhausted(DToughError):
    """A doubling search ran out of attempts without satisfying all conditions."""


class TieOnBoundary(DToughError):
    """Two vertices landed exactly on a shrunken disk boundary.

    Reached only through exact cocircular coincidences on the shrink pencil;
    surfaced with the witnesses instead of silently perturbing.
    """

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class InvariantBroken(DToughError):
    """A verified-theorem invariant failed. This is a falsification alarm."""


class ConstructionFailed(DToughError):
    """A halving/doubling construction loop hit its attempt cap."""


class PointFileError(DToughError):
    """Point file could not be parsed. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
