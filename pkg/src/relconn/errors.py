"""Exception hierarchy shared by all modules."""


class RelconnError(Exception):
    """Base class for every error raised by this package."""


class CarrierMismatch(RelconnError):
    """Two relations or a relation and a subset live on incompatible sets."""


class KindMismatch(RelconnError):
    """A term, lifting or connector was used at the wrong functor kind."""


class TermViolation(RelconnError):
    """A functor term breaks an invariant of its kind."""

    def __init__(self, message, state=None):
        super().__init__(message if state is None else f"{message} at {state}")
        self.clause = message
        self.state = state


class CapExceeded(RelconnError):
    """An exhaustive enumeration would exceed its configured size cap."""

    def __init__(self, what, count, cap):
        super().__init__(f"{what}: {count} exceeds cap {cap}")
        self.what = what
        self.count = count
        self.cap = cap


class Intractable(CapExceeded):
    """A composite connector could not be decided within the configured caps."""


class ParseError(RelconnError):
    """Malformed input text; ``line``/``pos`` locate the problem when known."""

    def __init__(self, message, line=None, pos=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"position {pos}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.pos = pos


class VerificationError(RelconnError):
    """An internally produced certificate failed its own check (a bug, never expected)."""
