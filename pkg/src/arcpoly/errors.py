"""Exception types shared across the package."""


class ArcPolyError(ValueError):
    pass


class CoincidentPoints(ArcPolyError):
    pass


class MapsThroughInfinity(ArcPolyError):
    pass


class PointsNotOnCircle(ArcPolyError):
    pass


class AngleOutOfRange(ArcPolyError):
    pass


class NotRealizable(ArcPolyError):
    pass


class DegenerateVertices(ArcPolyError):
    pass


class ForbiddenTriple(ArcPolyError):
    pass


class NotACusp(ArcPolyError):
    pass


class NotSimpleInput(ArcPolyError):
    pass


class ParameterOutOfRange(ArcPolyError):
    pass


class NotApplicable(ArcPolyError):
    pass


class NotConnected(ArcPolyError):
    pass


class NotACactus(ArcPolyError):
    def __init__(self, message, witness_edge=None):
        super().__init__(message)
        self.witness_edge = witness_edge


class UnsupportedGraph(ArcPolyError):
    pass


class UnequalBigonAngles(ArcPolyError):
    pass


class NonConsecutiveEdges(ArcPolyError):
    pass


class OverlapAfterPlacement(ArcPolyError):
    pass
