"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain an operation supports."""


class ParseError(ValueError):
    """Text cannot be read as a number in scientific or plain decimal form."""
