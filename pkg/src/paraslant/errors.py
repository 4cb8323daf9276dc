"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for every error raised by this package."""


class UnboundVariable(GeometryError):
    """Evaluation met a variable that has no value in the binding."""


class DomainViolation(GeometryError):
    """Evaluation left the domain of a partial function (log, sqrt, division, kinks)."""


class ParseError(GeometryError):
    """Malformed expression or manifest text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None and column is not None:
            where = f"line {line}, column {column}: "
        elif line is not None:
            where = f"line {line}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)


class SingularMetric(GeometryError):
    """Metric determinant vanishes identically or at a requested point."""


class NonPolynomialInput(GeometryError):
    """An operation that needs polynomial input received something else."""


class NotSlant(GeometryError):
    """The pairing of the tangent with the structure covector is not constant."""


class NotConstantSpeed(GeometryError):
    """The tangent is neither null nor normalized to squared speed +1 or -1."""


class FrameError(GeometryError):
    """Base class for frame-construction failures."""


class DegenerateFrame(FrameError):
    """Tangent, its structure image and the characteristic field are dependent."""


class VanishingCurvatureDenominator(FrameError):
    """The closed-form torsion denominator is numerically zero."""


class NullTangent(FrameError):
    """Routing signal: the tangent is null, use the null-curve frame."""


class NullNormal(FrameError):
    """Routing signal: the covariant acceleration is null, use the null-normal frame."""


class NotDistinguishedParametrization(FrameError):
    """Null-curve frame requires the acceleration normalized to unit scalar square."""


class LegendreNullCurve(FrameError):
    """Null curve with zero slant constant; it must be a geodesic.

    Carries the verification numbers so callers can report them.
    """

    def __init__(self, message: str, strict_residual: float, pregeodesic_residual: float):
        super().__init__(message)
        self.strict_residual = strict_residual
        self.pregeodesic_residual = pregeodesic_residual


class GeodesicNullCurve(FrameError):
    """Null geodesic: the acceleration vanishes, no Cartan frame exists."""


class NormalNotNull(FrameError):
    """The covariant acceleration is not a null vector."""


class ProportionalityViolated(FrameError):
    """The derivative of the null normal is not parallel to it."""


class DegenerateSlant(FrameError):
    """Slant constant squares to one, the null-normal frame degenerates."""
