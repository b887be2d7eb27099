"""Exception types raised across the package."""


class TricountError(Exception):
    """Base class for all package errors."""


class GeometryError(TricountError):
    pass


class NotCrossing(GeometryError):
    pass


class NotSimple(GeometryError):
    pass


class InvalidPolygon(GeometryError):
    pass


class GraphError(TricountError):
    """A graph violates a precondition of the reduction."""


class NotCubic(GraphError):
    pass


class NotPlanar(GraphError):
    pass


class NotConnected(GraphError):
    pass


class TooLarge(TricountError):
    pass


class ArrangementError(TricountError):
    """Raised by the red-blue validator; ``clause`` names the violated condition."""

    def __init__(self, message, clause=None, witnesses=()):
        super().__init__(message)
        self.clause = clause
        self.witnesses = tuple(witnesses)

    def report(self):
        return {"clause": self.clause, "message": str(self), "witnesses": [list(w) if isinstance(w, (tuple, list)) else w for w in self.witnesses]}


class ImproperCrossing(ArrangementError):
    pass


class WrongBlueDegree(ArrangementError):
    pass


class WrongRedDegreeOrOrder(ArrangementError):
    pass


class Disconnected(ArrangementError):
    pass


class ConstructionInvalid(ArrangementError):
    pass


class GadgetDegenerate(TricountError):
    pass


class StitchingFailure(TricountError):
    pass


class NotSinglePolygon(TricountError):
    pass


class InfeasibleSize(TricountError):
    pass


class BadR(TricountError):
    pass


class InconsistentHistogram(TricountError):
    pass


class Ambiguous(TricountError):
    pass
