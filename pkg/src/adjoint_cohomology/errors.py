"""Exception types raised across the package."""


class AdjointCohomologyError(Exception):
    """Base class for all errors raised by this package."""


class PresentationSyntaxError(AdjointCohomologyError, ValueError):
    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        found = repr(text[position]) if position < len(text) else "end of input"
        super().__init__(f"at position {position}: expected {expected}, found {found}")


class DuplicateGenerator(AdjointCohomologyError, ValueError):
    pass


class UnknownGenerator(AdjointCohomologyError, ValueError):
    pass


class BudgetExceeded(AdjointCohomologyError):
    """Coset enumeration did not close within the allowed number of live cosets.

    This is not a proof that the group is infinite.
    """

    def __init__(self, max_cosets: int):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration exceeded {max_cosets} live cosets")


class OrderTooLarge(AdjointCohomologyError):
    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"group order {order} exceeds the oracle cap {cap}")


class NotComposable(AdjointCohomologyError, ValueError):
    pass


class WalkNotClosed(AdjointCohomologyError):
    pass


class ComplexMismatch(AdjointCohomologyError, ValueError):
    pass


class UnsupportedClass(AdjointCohomologyError, ValueError):
    pass


class OracleInconsistency(AdjointCohomologyError):
    pass
