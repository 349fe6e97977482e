"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operands have incompatible lengths or dimensions."""


class EmptyInput(ValueError):
    """An operation that needs a nonempty sequence got an empty one."""


class NotInAlphabet(ValueError):
    """A DNA block is not in the 11-trinucleotide alphabet."""

    def __init__(self, message, block_index=None):
        super().__init__(message)
        self.block_index = block_index  # 1-based index of the offending block


class BadArgument(ValueError):
    """A parameter is outside its documented range."""


class BudgetExceeded(RuntimeError):
    """An enumeration exceeded its configured budget."""

    def __init__(self, message, resume_token=None, partial=None):
        super().__init__(message)
        self.resume_token = resume_token
        self.partial = partial


class GuardViolated(RuntimeError):
    """A construction precondition (e.g. the complement-augmentation
    distance guard) does not hold."""
