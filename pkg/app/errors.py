"""Exception hierarchy shared by the computational modules and the CLI."""


class LaurentError(Exception):
    """Base class for every error raised by the package."""

    error_type = "laurent_error"
    exit_code = 1


class PreconditionError(LaurentError):
    """The caller asked for something outside the domain of an operation."""

    error_type = "precondition_error"
    exit_code = 2


class DivisionByZeroError(PreconditionError, ZeroDivisionError):
    error_type = "division_by_zero"


class PoleError(PreconditionError):
    """A substitution or evaluation hit a zero of a denominator."""

    error_type = "pole"


class PoleAtMinusOneError(PoleError):
    error_type = "pole_at_minus_one"


class ResonanceError(PreconditionError):
    """Two eigenvalues that must differ coincide at the chosen parameters."""

    error_type = "resonance"


class DomainViolationError(PreconditionError):
    """An operator defined on Λ⁺ received negative power sums or w."""

    error_type = "domain_violation"


class InvalidBoxError(PreconditionError, ValueError):
    error_type = "invalid_box"


class SymmetryError(PreconditionError):
    """A finite operator received a non-symmetric Laurent polynomial."""

    error_type = "not_symmetric"


class ParseError(PreconditionError, ValueError):
    error_type = "parse_error"


class TriangularityError(LaurentError):
    """An operator produced a term above the diagonal of the dominance order."""

    error_type = "triangularity_violation"


class ResidualP0DependenceError(LaurentError):
    error_type = "residual_p0_dependence"


class SingularTransitionError(LaurentError):
    """The power-sum to monomial transition block could not be inverted."""

    error_type = "singular_transition"
