"""Exception hierarchy for the toolkit.

Geometry errors signal that a curve is outside the generic regime the
algorithms assume; numerical errors signal that an algorithm could not
reach its accuracy target.
"""


class Genus2HitchinError(Exception):
    """Base class for all toolkit errors."""


class GeometryError(Genus2HitchinError):
    """Curve geometry is degenerate or inconsistent."""


class DegenerateCurve(GeometryError):
    """Branch/singular loci collide, or a required discriminant vanishes."""


class InconsistentGeometry(GeometryError):
    """Numerically found counts contradict the expected covering data."""


class NearBranchPoint(GeometryError):
    """A point or path violates the clearance around a branch x-value."""


class BranchCollision(GeometryError):
    """A trajectory drifted into the clearance zone of a branch x-value."""


class NumericalError(Genus2HitchinError):
    """An algorithm failed to meet its accuracy contract."""


class ContinuationFailure(NumericalError):
    """Sheet tracking could not proceed (step size underflow)."""


class QuadratureNonconvergence(NumericalError):
    """Adaptive path integration did not reach the requested tolerance."""


class SingularSystem(NumericalError):
    """Separating relations are unsolvable (e.g. repeated x-values)."""


class NoRealizableH(NumericalError):
    """No Hamiltonian vector reproduces the configuration within tolerance."""


class RankDeficiency(NumericalError):
    """An implicit-function solve met a singular Jacobian."""


class StepFailure(NumericalError):
    """The ODE integrator failed to advance."""


class CycleSelectionFailure(NumericalError):
    """Could not assemble an independent homology cycle set."""


class BilinearViolation(NumericalError):
    """Normalized period matrix fails symmetry/positivity, so the cycle
    basis must be wrong."""


class TruncationOverflow(NumericalError):
    """Theta lattice sum would exceed the configured point budget."""


class NearThetaDivisor(NumericalError):
    """Theta evaluation landed too close to its zero divisor."""


class CalibrationFailure(NumericalError):
    """Riemann-constant calibration did not converge from any seed."""


class IllConditionedRoots(NumericalError):
    """Power-sum inversion produced an unreliable root set."""


class AmbiguousAssignment(NumericalError):
    """Two branch-matching assignments are too close to distinguish."""


class ExpansionResidual(NumericalError):
    """A claimed differential expansion fails to integrate to zero."""


class ConfigError(Genus2HitchinError):
    """Malformed experiment configuration."""
