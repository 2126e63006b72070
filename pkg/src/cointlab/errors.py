"""Exception hierarchy shared across the toolkit.

Validation problems (bad arguments, malformed input files) raise
subclasses of :class:`ValidationError`; numerical problems encountered
during estimation raise subclasses of :class:`ComputationError`.  The
CLI maps the two branches onto exit codes 1 and 2.
"""


class CointlabError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(CointlabError):
    """Invalid inputs detected before any computation."""


class ComputationError(CointlabError):
    """Numerical failure during estimation or testing."""


class InsufficientDataError(ValidationError):
    """Sample too short for the requested operation."""


class AlignmentError(ValidationError):
    """Series cannot be aligned onto a common sample."""


class DomainError(ValidationError):
    """Value outside the mathematical domain of a transform."""


class ParameterError(ValidationError):
    """Operation parameter outside its admissible range."""


class DegreesOfFreedomError(ValidationError):
    """Not enough effective observations for the regressor count."""


class DegenerateInputError(ValidationError):
    """Input with no variation where variation is required."""


class SchemaError(ValidationError):
    """Input file does not match the declared column schema."""


class ContinuityError(ValidationError):
    """Year column has gaps or is not strictly increasing."""


class ParseError(ValidationError):
    """Cell in an input file could not be parsed as a number."""


class SingularMatrixError(ComputationError):
    """Rank-deficient design or moment matrix."""

    def __init__(self, message: str, dependent_columns: tuple[int, ...] = ()):
        super().__init__(message)
        self.dependent_columns = dependent_columns


class InvalidRestrictionError(ValidationError):
    """Empty or out-of-range coefficient restriction set."""


class NormalizationError(ComputationError):
    """Cointegrating vector cannot be normalized as requested."""
