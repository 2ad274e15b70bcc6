class VaalerError(ValueError):
    """Root of every domain error raised by this package."""


class InputError(VaalerError):
    """Malformed JSON input or wrong array shapes."""


class PolytopeError(VaalerError):
    """An H-representation that does not describe a valid polytope."""


class Unbounded(PolytopeError):
    pass


class OriginNotInterior(PolytopeError):
    pass


class EmptyInterior(PolytopeError):
    pass


class RankDeficient(PolytopeError):
    pass


class DegenerateInput(VaalerError):
    pass


class DegenerateSimplex(VaalerError):
    pass


class HypothesisFailed(VaalerError):
    """The face-distance hypothesis does not hold; the failing report is attached."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class UnsupportedDimension(VaalerError):
    pass


class DimensionMismatch(VaalerError):
    pass


class NoValidPosition(VaalerError):
    pass


class NotUnitVectors(VaalerError):
    pass
