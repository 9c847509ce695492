"""Exception hierarchy. The three classes map onto the CLI exit codes:
ValidationError -> 1, GuardError -> 2, InvariantError -> 3."""


class UrygridError(Exception):
    """Base class for all library errors."""


class ValidationError(UrygridError):
    """Malformed or axiom-violating input. Carries a witness when one exists."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GuardError(UrygridError):
    """A size guard refused the computation. Explicit refusal, never silent
    truncation. ``partial`` may carry a partial result found before refusal."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InvariantError(UrygridError):
    """An internal consistency guarantee failed. Always a bug."""
