"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the geometric domain of a formula (never silently clamped)."""


class NotHyperbolic(ValueError):
    """Matrix with |trace| <= 2: elliptic/parabolic element, no closed geodesic."""


class NumericallyAmbiguous(RuntimeError):
    """Endpoint separation below tolerance; caller should perturb twists and retry."""


class SharedGeodesic(ValueError):
    """The two words run along the same unoriented geodesic."""


class ValidationFailed(RuntimeError):
    """Holonomy assembly failed an internal consistency gate."""


class BudgetExceeded(RuntimeError):
    """Word-ball enumeration hit the configured node limit."""


class BallTooSmall(RuntimeError):
    """Certified translate radius for a crossing scan exceeds the cached ball."""


class EmptyTable(ValueError):
    """Curve table has no entry satisfying the query."""


class NoDualFound(RuntimeError):
    """No enumerated simple curve meets the exactly-once intersection requirement."""


class RankDeficient(RuntimeError):
    """Curve table does not span the homology lattice."""


class DegenerateBasis(RuntimeError):
    """Selected homology basis has non-unimodular pairing."""


class AmbiguousSide(ValueError):
    """Curve crosses the separating multicurve; it belongs to no side."""


class RegimeViolation(RuntimeError):
    """A curve disjoint from every short curve shortened under the auxiliary move."""


class WitnessNotFound(RuntimeError):
    """Surgery witness search exhausted its subset budget."""


class WindowExhausted(RuntimeError):
    """Twist descent hit the window boundary (result still returned by callers)."""
