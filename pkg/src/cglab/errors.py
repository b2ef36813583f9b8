"""Exception types shared across the library.

Most of these mark precondition violations of a specific operation; the
docstring of the raising function says which.  Anything that merely reports
a negative mathematical outcome (a refuted certificate, a missing chain
witness) is returned as data, not raised.
"""


class CGLabError(Exception):
    """Base class for all library errors."""


class IncomparableFields(CGLabError):
    """Two quadratic values live in different fields Q(sqrt(d))."""


class DependentBasis(CGLabError):
    """A basis argument was linearly dependent."""


class EmptyPolyhedron(CGLabError):
    """Operation requires a nonempty polyhedron."""


class UnboundedDirection(CGLabError):
    """Requested face/support in a direction where the set is unbounded."""


class DimensionBound(CGLabError):
    """Ambient dimension exceeds the configured bound."""


class NotPointed(CGLabError):
    """Cone has a nontrivial lineality space where a pointed one is required."""


class SearchBudgetExceeded(CGLabError):
    """An enumeration or DFS ran out of its node budget (distinct from 'no')."""


class NoConvergence(CGLabError):
    """Finite sequence failed the conical-convergence tolerance test."""


class EmptyClosure(CGLabError):
    """Cut family has empty intersection; validity queries are undefined."""


class UnstableBox(CGLabError):
    """Integer-hull facets kept changing under box enlargement."""


class ApproximationBudget(CGLabError):
    """No Diophantine approximant found within the given budget."""


class VerificationFailed(CGLabError):
    """An emitted cut failed its exact re-check against the support oracle."""


class CertifiedInstead(CGLabError):
    """Asked for non-generation evidence but the body certified at this radius."""


class RankExceeded(CGLabError):
    """Chvatal rank iteration hit max_iter; carries the trace so far."""

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = list(trace)
