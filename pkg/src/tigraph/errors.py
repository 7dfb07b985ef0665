"""Exception hierarchy shared across the package."""


class TigraphError(Exception):
    """Base class for all library errors."""


class ParseError(TigraphError):
    """Input is not well-formed (bad JSON, bad text line, wrong types)."""


class ValidationError(TigraphError):
    """Input is well-formed but violates a structural invariant."""


class EmptyGraphError(TigraphError):
    """Pruning removed every vertex; the graph carries no recurrent dynamics."""


class NoConvergenceError(TigraphError):
    """Eigenvalue iteration failed to certify the requested tolerance."""


class NotPrimitiveError(TigraphError):
    """No boolean matrix power became all-positive within the search cap."""


class SizeCapExceeded(TigraphError):
    """A construction would exceed the configured size or work budget."""


class StateCapExceeded(TigraphError):
    """Subset-state construction exceeded the configured state cap."""


class DegenerateCoverError(TigraphError):
    """A covering or intersection test is decided by a near-tie; perturb input."""


class LengthMismatchError(TigraphError):
    """Two words of different lengths were compared positionwise."""
