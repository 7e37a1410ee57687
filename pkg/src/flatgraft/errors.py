"""Exception hierarchy for surface construction, curves and surgery."""


class FlatGraftError(Exception):
    """Base class for all domain errors raised by this package."""


# -- surface construction -------------------------------------------------

class UnpairedEdge(FlatGraftError):
    pass


class VectorMismatch(FlatGraftError):
    pass


class NonPositiveTriangle(FlatGraftError):
    pass


class AngleNotHalfTurnMultiple(FlatGraftError):
    pass


class GaussBonnetViolation(FlatGraftError):
    pass


class MarkedAngleTooSmall(FlatGraftError):
    pass


class UnmarkedAngleTooSmall(FlatGraftError):
    pass


class DisconnectedSurface(FlatGraftError):
    pass


class SingularMatrix(FlatGraftError):
    pass


# -- curves ----------------------------------------------------------------

class CurveError(FlatGraftError):
    pass


class NullHomotopic(CurveError):
    pass


class Peripheral(CurveError):
    pass


class NotSimple(CurveError):
    pass


class IdenticalClass(CurveError):
    """Intersection of a class with itself; by convention the count is 0."""


class EndpointOnVertex(CurveError):
    pass


class BadTransversal(CurveError):
    pass


# -- grafting and strata -----------------------------------------------------

class ZeroGraft(FlatGraftError):
    """Grafting with the zero vector; the identity surgery, flagged."""


class NormalizeUnsupported(FlatGraftError):
    pass


class NotVertical(FlatGraftError):
    pass


class DirectionParallelToGraft(FlatGraftError):
    pass


class CylinderClass(FlatGraftError):
    """Operation requires a path representative but the class is a cylinder."""


class AllHorizontal(FlatGraftError):
    pass


# -- text format -------------------------------------------------------------

class FormatError(FlatGraftError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line
