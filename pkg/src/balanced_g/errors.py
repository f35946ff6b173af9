"""Exception taxonomy for the balanced-g library.

Every numerical failure mode surfaces as a distinct subclass of
:class:`BalancedGError` so that callers (and the CLI) can map errors to
machine-readable codes without string matching.
"""


class BalancedGError(Exception):
    """Base class for all balanced-g errors."""

    code = "error"


class GammaPoleError(BalancedGError):
    """An uncancelled gamma-function pole was hit."""

    code = "gamma_pole"


class NonConvergenceError(BalancedGError):
    """A series or iteration failed to converge within its budget."""

    code = "non_convergence"

    def __init__(self, message, partial=None, bound=None):
        super().__init__(message)
        self.partial = partial
        self.bound = bound


class CoincidentParameterError(BalancedGError):
    """Parameters coincide modulo integers where distinctness is required."""

    code = "coincident_parameters"


class DegenerateParameterError(BalancedGError):
    """A degeneracy (vanishing Pochhammer prefactor, sine zero, ...) occurred."""

    code = "degenerate_parameters"


class BranchCutError(BalancedGError):
    """Evaluation requested on a branch cut; use the bank operations."""

    code = "on_branch_cut"


class UnitCircleError(BalancedGError):
    """Evaluation requested on the unit circle where neither series applies."""

    code = "unit_circle"


class DomainError(BalancedGError):
    """Argument outside the operation's domain."""

    code = "domain"


class EnclosureError(BalancedGError):
    """A residue contour encloses, or nearly encloses, a foreign pole."""

    code = "enclosure"


class QuadratureError(BalancedGError):
    """Quadrature failed: non-integrable endpoint or budget exhausted."""

    code = "quadrature"


class PreconditionError(BalancedGError):
    """A documented precondition of an identity is violated."""

    code = "precondition_failed"
