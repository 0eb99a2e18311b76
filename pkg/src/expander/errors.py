"""Exception types shared across the package."""


class ExpanderError(Exception):
    """Base class for all domain errors raised by this package."""


class ZeroMatrix(ExpanderError):
    """All singular values of a matrix fell below the rank cutoff."""


class DegenerateIntersection(ExpanderError):
    """A subspace pair violates the generic rank condition needed for tangents."""


class ZeroProjection(ExpanderError):
    """The projection of a block onto the reference frame vanished."""


class InvalidModel(ExpanderError):
    """Model parameters produce an ill-defined spectrum."""


class NoSpectralGap(ExpanderError):
    """The requested eigenvalue gap does not exist; the target subspace is ill-defined."""


class RankCollapse(ExpanderError):
    """Orthonormalization of refined vectors produced fewer directions than requested."""


class GenericityFailure(ExpanderError):
    """A generic full-rank condition failed for the given subspace/operator pair."""


class SingularFilter(ExpanderError):
    """The polynomial filter vanishes on one of the leading eigenvalues."""


class NumericalFailure(ExpanderError):
    """An observed quantity violated a theorem-backed bound during a run."""
