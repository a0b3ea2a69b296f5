# Exception hierarchy for tcores
# Every rejected precondition is a ValidationError; exhaustive work that would
# blow past the configured budget raises BudgetExceededError.


class TCoresError(Exception):
    """Base class for all tcores errors."""


class ValidationError(TCoresError, ValueError):
    """An input violates an operation's precondition."""


class InvalidModulusError(ValidationError):
    """The modulus t is smaller than 2."""

    def __init__(self, t: int):
        super().__init__(f"t must be an integer >= 2, got {t!r}")
        self.t = t


class InvalidPartitionError(ValidationError):
    """Parts are not a weakly decreasing sequence of positive integers."""


class BoxMismatchError(ValidationError):
    """A partition does not fit inside the requested box."""


class NotACoreError(ValidationError):
    """A partition expected to be a t-core is not one."""


class DescriptorError(ValidationError):
    """Positions of justification do not describe a balanced t-core."""


class RunnerShapeError(ValidationError):
    """Runner words have the wrong lengths or total size for their box."""


class BudgetExceededError(TCoresError, RuntimeError):
    """Exhaustive enumeration would exceed the configured budget."""

    def __init__(self, needed: int, budget: int, what: str = "compositions"):
        super().__init__(f"{needed} {what} exceed the budget of {budget}")
        self.needed = needed
        self.budget = budget
