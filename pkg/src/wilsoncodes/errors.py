"""Exception types shared across the package."""


class DomainError(ValueError):
    """Parameters or inputs outside an operation's mathematical domain."""


class PurgeFailed(RuntimeError):
    """The cycle purge heuristic ran out of restarts without a clean lifting."""
