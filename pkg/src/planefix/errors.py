"""Exception hierarchy shared by all modules."""


class PlanefixError(Exception):
    """Base class for library errors."""


class DegenerateCurve(PlanefixError):
    pass


class FixedPointOnCurve(PlanefixError):
    """A sampled displacement fell to or below the fixed-point tolerance."""

    def __init__(self, t, point, displacement=0.0, all_fixed=False):
        self.t = float(t)
        self.point = point
        self.displacement = float(displacement)
        self.all_fixed = all_fixed
        super().__init__(f"fixed point on curve at t={self.t:.6g}, point={point}")


class RefinementExhausted(PlanefixError):
    pass


class NonIntegralIndex(RefinementExhausted):
    """Closed-curve index not within the integrality band."""


class EndpointMismatch(PlanefixError):
    pass


class DepthLimitExceeded(PlanefixError):
    pass


class NotADisc(PlanefixError):
    pass


class InadmissibleContinuum(PlanefixError):
    pass


class SiteOffBoundary(PlanefixError):
    pass


class AmbiguousRegion(PlanefixError):
    pass


class NotInvariant(PlanefixError):
    pass


class SubdivisionStuck(PlanefixError):
    pass


class SearchExhausted(PlanefixError):
    pass


class CatalogError(PlanefixError, ValueError):
    """Unknown catalog id or parameters out of range."""


class GridFormatError(PlanefixError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class EmptyReport(PlanefixError):
    pass


class PreconditionError(PlanefixError, ValueError):
    pass
