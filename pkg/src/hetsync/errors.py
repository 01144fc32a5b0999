"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` covers rejected
inputs (bad configs, malformed models, inadmissible graphs) and
:class:`SolverError` covers numerical routines that could not deliver their
contract. The CLI maps the families to distinct exit codes.
"""


class HetSyncError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HetSyncError):
    """Input data violates a structural precondition."""


class SolverError(HetSyncError):
    """A numerical routine failed to meet its accuracy or existence contract."""


# --- linear algebra -------------------------------------------------------

class NotHurwitz(SolverError):
    """Matrix required to be Hurwitz has an eigenvalue too close to (or in)
    the closed right half-plane."""


class IllConditioned(SolverError):
    """A solve succeeded formally but the residual bound could not be met."""


class SpectraOverlap(SolverError):
    """Sylvester operands share (near-)eigenvalues; the equation is singular."""


class NotStabilizable(SolverError):
    """(A, B) fails the Hautus stabilizability test."""


class NoStabilizingSolution(SolverError):
    """The Riccati Hamiltonian has eigenvalues on the imaginary axis; no
    stabilizing solution exists."""


class ConvergenceFailure(SolverError):
    """The underlying eigenvalue/Schur iteration did not converge."""


class NotSymmetric(ValidationError):
    """A matrix required to be symmetric is not, beyond tolerance."""


# --- graphs ---------------------------------------------------------------

class GraphError(ValidationError):
    """Base class for inadmissible communication graphs."""


class SelfLoop(GraphError):
    """An edge connects a node to itself."""


class DuplicateEdge(GraphError):
    """The same undirected node pair appears twice in the edge list."""


class NonPositiveWeight(GraphError):
    """An edge weight is zero or negative."""


class Disconnected(GraphError):
    """The graph does not have a simple Laplacian eigenvalue at zero."""


# --- models and equations -------------------------------------------------

class DimensionMismatch(ValidationError):
    """Matrix dimensions are mutually inconsistent."""


class NoSolution(SolverError):
    """The regulator equations have no solution within tolerance for this
    agent/exosystem pair."""


class InequalityViolated(SolverError):
    """A synthesized solution fails one of the strict design inequalities."""


# --- simulation and configuration ----------------------------------------

class StepTooLarge(SolverError):
    """The fixed-step integrator diverged; reduce the step size."""


class ConfigError(ValidationError):
    """A configuration document is malformed; the message names the field."""
