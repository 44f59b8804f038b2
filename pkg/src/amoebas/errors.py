"""Exception types shared across the package."""


class AmoebaError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(AmoebaError):
    """Input document does not match the expected schema."""


class NotATree(AmoebaError):
    """Edge list does not describe a tree on the given vertex set."""


class NotACopy(AmoebaError):
    """Claimed copy fails validation against its host tree."""


class BudgetExceeded(AmoebaError):
    """A size or step budget was exceeded before the operation finished."""


class DeadCopyChosen(AmoebaError):
    """A growth step named a copy whose minimal growth is the host itself."""


class IndexOutOfRange(AmoebaError):
    """A copy or growth index does not exist in the current state."""


class EmptyColony(AmoebaError):
    """A colony operation was given no member amoebas."""


class InconsistentLog(AmoebaError):
    """A sequence log contradicts itself during replay."""
