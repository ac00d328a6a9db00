class VklError(Exception):
    """Base exception for Virtual Knot Lab"""
    pass


class ConfigurationError(VklError):
    """Raised when settings, the knot catalog or a fixture path is unusable"""
    pass


class AlgebraError(VklError):
    """Raised when an exact computation cannot be carried out"""
    pass


class DivisionByZeroError(AlgebraError):
    """Raised on division by an exact zero; carries the offending denominator"""

    def __init__(self, denominator, message: str = "division by zero"):
        self.denominator = denominator
        super().__init__(f"{message}: {denominator}")


class NonInvertibleError(AlgebraError):
    """Raised when an element or matrix has no inverse (isotropic, singular)"""
    pass


class ParamsMismatchError(AlgebraError):
    """Raised when operands live in different rings or algebras"""
    pass


class UnsupportedParametersError(AlgebraError):
    """Raised for algebra parameters the determinant embedding cannot express"""
    pass


class ParseError(VklError):
    """Raised when textual input cannot be parsed"""
    pass


class BraidParseError(ParseError):
    """Raised for malformed virtual braid words"""
    pass


class DiagramParseError(ParseError):
    """Raised for malformed crossing diagrams"""
    pass


class SwitchPreconditionError(VklError):
    """Raised when a switch constructor precondition fails; names the precondition"""

    def __init__(self, precondition: str, detail: str = ""):
        self.precondition = precondition
        text = precondition if not detail else f"{precondition}: {detail}"
        super().__init__(text)


class ReportGenerationError(VklError):
    """Raised when report generation fails"""
    pass
