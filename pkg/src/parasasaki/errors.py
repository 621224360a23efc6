"""Exception hierarchy."""


class GeometryError(Exception):
    """Base class for all errors raised by this package."""


class VarianceError(GeometryError):
    pass


class ShapeError(GeometryError):
    pass


class SingularMetricError(GeometryError):
    pass


class DimensionError(GeometryError):
    pass


class BackendError(GeometryError):
    """Operation not available for the given manifold backend."""


class ParameterError(GeometryError, ValueError):
    pass


class PhpcrValidationError(GeometryError):
    pass


class PreconditionError(GeometryError):
    pass


class FitDegenerateError(GeometryError):
    pass


class MetricSignatureError(GeometryError):
    pass


class NotApplicableError(GeometryError):
    pass


class InternalConsistencyError(GeometryError):
    """Two computation routes that must agree did not; indicates an engine bug."""
