"""Exception hierarchy for alfrod.

ValidationError covers bad mathematical data (CLI exit code 1),
InputError covers malformed files and arguments (CLI exit code 2).
"""


class AlfrodError(Exception):
    """Base class for all alfrod errors."""


class ValidationError(AlfrodError, ValueError):
    """Mathematically invalid data."""


class InputError(AlfrodError, ValueError):
    """Malformed external input (files, CLI arguments)."""


# --- rod function construction ---

class NonIncreasingKinks(ValidationError):
    pass


class NonPositiveWeight(ValidationError):
    pass


class WeightsNotNormalized(ValidationError):
    pass


class NonPositiveA(ValidationError):
    pass


class SlopeRangeViolation(ValidationError):
    pass


class InconsistentLengths(ValidationError):
    pass


class ZeroScale(ValidationError):
    pass


# --- potential / metric evaluation ---

class NonPositiveRho(ValidationError):
    pass


class KinkPoint(ValidationError):
    pass


class ZeroSlopeSegment(ValidationError):
    pass


class NonPositiveV(ValidationError):
    pass


class NearAxisPoint(ValidationError):
    """Point too close to the axis for stable interior evaluation; use axis_limits."""


class StepTooLarge(ValidationError):
    pass


# --- polytope / structure ---

class InconsistentVertex(ValidationError):
    pass


class DegenerateBasis(ValidationError):
    pass


class ParameterConstraintViolated(ValidationError):
    pass


class UnknownExample(InputError):
    pass


# --- blowup ---

class ZeroNewSlope(ValidationError):
    pass


class OrderingViolation(ValidationError):
    pass


# --- file I/O ---

class ParseError(InputError):
    pass
