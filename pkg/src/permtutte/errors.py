"""Exception hierarchy.

``InputError`` subclasses describe malformed input (CLI exit code 2);
``PreconditionError`` subclasses describe well-formed input outside an
operation's domain (exit code 3).
"""


class PermTutteError(Exception):
    pass


class InputError(PermTutteError, ValueError):
    pass


class PreconditionError(PermTutteError, ValueError):
    pass


class EdgeWithinSide(InputError):
    pass


class UnknownVertex(InputError):
    pass


class DuplicateVertex(InputError):
    pass


class InvalidSpec(InputError):
    pass


class UnknownEdge(InputError):
    pass


class InvalidArgs(InputError):
    pass


class ContractLoop(PreconditionError):
    pass


class NotSpanningTree(PreconditionError):
    pass


class Disconnected(PreconditionError):
    pass


class NotSimple(PreconditionError):
    pass


class NotALeaf(PreconditionError):
    pass


class IncompatibleSides(PreconditionError):
    pass


class TooSmall(PreconditionError):
    pass


class TooLarge(PreconditionError):
    pass


class BudgetExceeded(PermTutteError, RuntimeError):
    """The memoized recursion hit its entry cap before finishing."""

    def __init__(self, message: str, entries: int):
        super().__init__(message)
        self.entries = entries
