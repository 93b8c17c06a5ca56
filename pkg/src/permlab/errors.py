"""Exception hierarchy shared by every permlab module."""


class PermlabError(Exception):
    pass


class UnsupportedFieldError(PermlabError):
    """Two quadratic surds over different fields were combined."""


class NonInjectiveError(PermlabError, ValueError):
    pass


class InvalidPairError(PermlabError, ValueError):
    pass


class UnresolvedComparison(PermlabError):
    """Two suffixes agreed on the whole lookahead window."""

    def __init__(self, i, j, lookahead):
        self.i, self.j, self.lookahead = i, j, lookahead
        super().__init__(
            f"suffixes at {i} and {j} agree on {lookahead} symbols; "
            "the order is unresolved (is the word ultimately periodic?)"
        )


class RationalDependenceError(PermlabError, ValueError):
    pass


class ConstructionError(PermlabError, ValueError):
    pass


class BudgetExceeded(PermlabError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class MalformedAutomaton(PermlabError):
    pass


class SpecError(PermlabError, ValueError):
    """A word/permutation spec string could not be parsed."""
