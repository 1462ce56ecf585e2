"""Exceptions shared across the package."""


class InputError(ValueError):
    """Raised when an operation receives arguments outside its contract."""


class ParseError(ValueError):
    """Raised for malformed documents; the message carries a location hint."""
