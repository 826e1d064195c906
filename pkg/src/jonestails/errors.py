"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class JonesTailsError(Exception):
    """Base class for every error raised by this package."""


class InputError(JonesTailsError):
    """Malformed or unsupported user input (CLI exit status 2)."""


# qseries
class NonUnitLeadingCoefficient(JonesTailsError):
    pass


class DivergentProduct(JonesTailsError):
    pass


class OutOfRange(JonesTailsError):
    pass


class ZeroSeries(JonesTailsError):
    pass


# diagram
class ParseError(InputError):
    pass


class NotAlternating(InputError):
    pass


class NotConnected(InputError):
    pass


class NotReduced(InputError):
    pass


class ColoringInconsistent(JonesTailsError):
    pass


class VInfNotAFace(InputError):
    pass


class TooLarge(JonesTailsError):
    pass


# nahm
class BoundTooLarge(JonesTailsError):
    pass


class RegularityViolation(JonesTailsError):
    pass


# jones
class WidthMismatch(InputError):
    pass


class NonUnitLowestCoefficient(JonesTailsError):
    pass


# stability
class NotStabilized(JonesTailsError):
    pass
