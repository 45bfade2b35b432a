class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ResourceLimitError(RuntimeError):
    """An enumeration guard was tripped."""


class StringParseError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
