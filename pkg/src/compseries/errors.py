"""Exception types shared across the package.

The CLI maps each family onto its own exit code, so library code should raise
the most specific class that applies.
"""


class DomainError(ValueError):
    """An operation was asked to act outside its mathematical domain."""


class ContextMismatchError(DomainError):
    """Operands live in different coefficient fields or have different truncation."""


class NotInGroupError(DomainError):
    """A series with zero linear coefficient was used where a group element is required."""


class NotFiniteOrderError(DomainError):
    """The input does not have finite compositional order (at its truncation)."""


class ParseError(ValueError):
    """Malformed serialized input."""


class SchemaError(ParseError):
    """Well-formed JSON whose content does not fit the series schema or its field."""


class ConsistencyError(AssertionError):
    """An identity guaranteed by the theory failed to hold; indicates a bug."""
