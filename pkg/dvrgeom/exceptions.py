#### Algebra Exceptions
class AlgebraException(Exception):
    """Base exception for arithmetic and geometry errors."""

    default_message = "An error occurred during an algebraic computation."

    def __init__(self, message=None, details=None):
        self.message = message or self.default_message
        self.details = details
        super().__init__(self.message)

    def __str__(self):
        error_message = f"Error: {self.message}"
        if self.details:
            error_message += f"\nDetails: {self.details}"
        return error_message


class InvalidRingException(AlgebraException):
    """Raised when a coefficient ring cannot be constructed."""

    default_message = "Invalid coefficient ring."


class RingMismatchException(AlgebraException):
    """Raised when operands live in different coefficient rings."""

    default_message = "Operands belong to different coefficient rings."


class NonUnitException(AlgebraException):
    """Raised when an inverse is requested for a non-unit."""

    default_message = "Element is not a unit."


class NotDVRException(AlgebraException):
    """Raised when a DVR-only operation is applied to a field."""

    default_message = "Operation requires a discrete valuation ring."


class PrecisionExhaustedException(AlgebraException):
    """Raised when a result would need valuation at or beyond the precision."""

    default_message = "Truncation precision exhausted."


class UnsupportedException(AlgebraException):
    """Raised for documented limitations of the ring backends."""

    default_message = "Operation is not supported for this ring."


class ArityMismatchException(AlgebraException):
    """Raised when polynomials or points disagree on the number of variables."""

    default_message = "Variable counts do not match."


class BudgetExceededException(AlgebraException):
    """Raised when an enumeration or Groebner computation exceeds its budget."""

    default_message = "Computation budget exceeded."


class NotCompleteIntersectionException(AlgebraException):
    """Raised when a presentation is not a complete intersection."""

    default_message = "Presentation is not a complete intersection."


class NotHypersurfaceException(AlgebraException):
    """Raised when a hypersurface model is required."""

    default_message = "Model is not a hypersurface."


class PointNotOnFibreException(AlgebraException):
    """Raised when a point does not lie on the special fibre."""

    default_message = "Point does not lie on the special fibre."


class NotNormalizedException(AlgebraException):
    """Raised when a local model must be normalized first."""

    default_message = "Local model is not normalized."


class InvalidLocalModelException(AlgebraException):
    """Raised when local model data violates the normal form conditions."""

    default_message = "Invalid ordinary quadratic local model."


class InvalidHyperplaneException(AlgebraException):
    """Raised when all hyperplane coefficients lie in the maximal ideal."""

    default_message = "Hyperplane has no unit coefficient."


class InvalidPencilException(AlgebraException):
    """Raised when the two forms of a pencil do not span a line."""

    default_message = "Invalid pencil."


class ChartInconsistencyException(AlgebraException):
    """Raised when blow-up charts disagree on a shared point."""

    default_message = "Blow-up charts disagree on an overlap."


class NonTerminationException(AlgebraException):
    """Raised when the resolution loop exceeds its step guard."""

    default_message = "Resolution did not terminate within the step guard."


class OracleDisagreementException(AlgebraException):
    """Raised when Groebner and enumeration verdicts differ."""

    default_message = "Groebner and enumeration verdicts disagree."


class ExhaustedException(AlgebraException):
    """Raised when a search finishes without a passing candidate."""

    default_message = "Search exhausted without a passing candidate."

    def __init__(self, message=None, details=None, statistics=None):
        super().__init__(message, details)
        self.statistics = statistics or {}


#### Scheme File Exceptions
class SchemeFileException(Exception):
    """Base exception for scheme description errors."""

    default_message = "An error occurred while reading a scheme description."

    def __init__(self, message=None, details=None):
        self.message = message or self.default_message
        self.details = details
        super().__init__(self.message)

    def __str__(self):
        error_message = f"Error: {self.message}"
        if self.details:
            error_message += f"\nDetails: {self.details}"
        return error_message


class SchemeFileNotFoundException(SchemeFileException):
    """Raised when the scheme file is not found."""

    default_message = "Scheme file not found."


class UnsupportedFileFormatException(SchemeFileException):
    """Raised when the file format is unsupported."""

    default_message = "Unsupported file format detected."


class PolynomialParseException(SchemeFileException):
    """Raised when polynomial or literal text cannot be parsed."""

    default_message = "Could not parse polynomial."

    def __init__(self, message=None, details=None, line=None, column=None):
        self.line = line
        self.column = column
        position = []
        if line is not None:
            position.append(f"line {line}")
        if column is not None:
            position.append(f"column {column}")
        if position and details:
            details = f"{details} ({', '.join(position)})"
        elif position:
            details = ", ".join(position)
        super().__init__(message, details)


class SchemeFileParseException(PolynomialParseException):
    """Raised when a scheme file line cannot be parsed."""

    default_message = "Could not parse scheme file."


class DeclaredDataMismatchException(SchemeFileException):
    """Raised when declared components or singular points fail re-verification."""

    default_message = "Declared data does not match the computed data."


class OutputFileExistsException(SchemeFileException):
    """Raised when the report file already exists and may be overwritten."""

    default_message = "The output file already exists and will be overwritten."


class InvalidSettingException(SchemeFileException):
    """Raised when a budget or bound setting is invalid."""

    default_message = "Invalid setting value."
