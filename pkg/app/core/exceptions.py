"""
Custom exceptions for the application.
"""


class KhovanovError(Exception):
    """Base class for all errors raised by the tangle invariant services."""
    pass


class ConfigurationError(KhovanovError):
    """Raised when there is an error in the application configuration."""
    pass


class DiagramError(KhovanovError):
    """Raised when a tangle diagram or tangle file is malformed."""
    pass


class PlanarityError(DiagramError):
    """
    Raised when the rotation system of a diagram is not planar.

    The failing component's face trace is kept on the exception so the
    CLI can print it.
    """

    def __init__(self, message: str, face_trace=None):
        super().__init__(message)
        self.face_trace = face_trace or []


class OrientationError(DiagramError):
    """Raised when orientation data is missing or inconsistent."""
    pass


class MatchingError(KhovanovError):
    """Raised for invalid crossingless matchings or mismatched sizes."""
    pass


class SurgeryError(KhovanovError):
    """Raised when a surgery does not fit the configuration it is applied to."""
    pass


class CorrespondenceError(KhovanovError):
    """Raised when correspondences cannot be composed or compared."""
    pass


class VerificationError(KhovanovError):
    """
    Raised when a verification report fails.

    The report is attached so callers can print the counterexamples.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ExportError(KhovanovError):
    """Raised when there is an error exporting a report."""
    pass
