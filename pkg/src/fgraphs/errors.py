"""Exception types shared across the package."""


class FGraphError(Exception):
    """Base class for all errors raised by fgraphs."""


class EnumerationCapExceeded(FGraphError):
    def __init__(self, what, count, cap):
        self.what = what
        self.count = count
        self.cap = cap
        super().__init__(f"enumerating {what} needs {count} values, cap is {cap}")


class BudgetExceeded(FGraphError):
    def __init__(self, what, count, cap):
        self.what = what
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} candidates exceed budget {cap}")


class MalformedValue(FGraphError):
    pass


class DomainMismatch(FGraphError):
    pass


class SpecMismatch(FGraphError):
    pass


class ParentMismatch(FGraphError):
    pass


class NotACongruence(FGraphError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"not a congruence: edges {pair[0]!r} and {pair[1]!r} "
                         "are identified but their projected values differ")


class PreconditionViolated(FGraphError):
    pass


class Unsupported(FGraphError):
    pass


class EmptyColorSet(FGraphError):
    pass


class NotAnOrientation(FGraphError):
    pass
