"""Exception hierarchy shared by every apfrag module."""


class ApfError(Exception):
    """Base class for all errors raised by apfrag."""


class SortError(ApfError):
    """An application whose argument sorts do not match the symbol's rank."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ShadowingError(ApfError):
    """A binder reuses a name that is already bound in the enclosing scope."""


class UnassignedSymbolError(ApfError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"symbol {self.name!r} has no assignment in the model"


class NotInFragmentError(ApfError):
    """Raised when an operation that needs a fragment formula gets something else."""

    def __init__(self, verdict):
        super().__init__(f"formula not in the array property fragment: {verdict.reason} at {verdict.location}")
        self.verdict = verdict


class InsufficientBoundError(ApfError):
    pass


class VerificationError(ApfError):
    """An internally computed claim failed its own re-check. Always a bug."""


class NoClashError(ApfError):
    pass


class ParityViolationError(ApfError):
    pass


class ParseError(ApfError):
    """SMT-LIB parse failure; ``kind`` is one of lexical, syntax, unknown-symbol,
    sort-mismatch, arity."""

    def __init__(self, kind, message, line, column):
        super().__init__(f"{line}:{column}: {kind}: {message}")
        self.kind = kind
        self.line = line
        self.column = column
