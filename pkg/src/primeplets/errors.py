"""Exception hierarchy shared by the library and the CLI."""


class PrimepletError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ValidationError(PrimepletError, ValueError):
    """Input violates an operation's preconditions."""

    exit_code = 2


class NotApplicableError(ValidationError):
    """The operation is not defined for this (otherwise valid) input."""


class CapacityError(PrimepletError):
    """Requested range or search box exceeds the configured budget."""

    exit_code = 3


class InvariantBreach(PrimepletError, AssertionError):
    """A law that should hold by construction was violated.

    Raised only on implementation bugs or transcription errors in tables.
    """


class SerializationError(PrimepletError, TypeError):
    exit_code = 2
