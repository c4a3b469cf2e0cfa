"""Exception types shared across the package."""


class InvcoError(Exception):
    """Base class for errors raised by this package."""


class UsageError(InvcoError, ValueError):
    """Caller passed something malformed (bad id, unknown letter, ...).

    The CLI maps this to exit code 2.
    """


class ResourceError(InvcoError):
    """A size guard tripped (semigroup too large, folding state cap, ...)."""


class TableError(InvcoError, ValueError):
    """A multiplication table fails the inverse-semigroup axioms."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(
            "table fails %d axiom check(s): %s"
            % (len(self.violations), "; ".join(map(str, self.violations[:4])))
        )
