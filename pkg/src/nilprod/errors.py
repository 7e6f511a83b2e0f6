"""Exception types shared across the package."""


class NilprodError(Exception):
    """Base class for all package errors."""


class SpecError(NilprodError):
    """Invalid parameters, malformed group spec, or violated constraints."""


class ParseError(SpecError):
    """Syntax error in the word language. Carries the offending position."""

    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos
        self.text = text


class BudgetExceeded(NilprodError):
    """A construction would exceed the enumeration budget."""

    def __init__(self, needed: int, budget: int, what: str = "group order"):
        super().__init__(f"{what} {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget
