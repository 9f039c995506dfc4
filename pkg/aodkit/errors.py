# -*- coding: utf-8 -*-
"""
Custom exceptions for aodkit.

Every class also derives from the builtin that best describes it, so callers
may catch either the aodkit class or e.g. `ValueError`.

"""

class AodkitError(Exception):
    """Base class for all errors raised by aodkit."""

class ShapeError(AodkitError, ValueError):
    """Matrix or transform dimensions do not fit the operation."""

class DesignError(AodkitError, ValueError):
    """Class for handling errors from module `aodkit.design`"""

class WeighingError(DesignError):
    """A Gram matrix X^H X is not a rational multiple of the identity."""

class ConstructionError(DesignError):
    """A construction precondition (e.g. s >= 1, t >= 1) is not met."""

class PairingError(AodkitError, ValueError):
    """Symbol pairing between A and B dispersion matrices failed."""

class CatalogError(AodkitError, LookupError):
    """Unknown name requested from one of the catalogs."""

class FormatError(AodkitError, ValueError):
    """Malformed structured file (family, code, seed or transform)."""

class EnumerationError(AodkitError, ValueError):
    """Too many constellation tuples to enumerate exhaustively."""

class ConsistencyError(AodkitError):
    """The simulator found a code whose equivalent channel is not orthogonal."""
