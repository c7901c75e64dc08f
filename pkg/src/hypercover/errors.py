class DomainError(ValueError):
    """Raised when an operation is called outside its mathematical domain."""


class BoundExceeded(DomainError):
    """Raised by brute-force oracles when an instance exceeds the configured size bound."""

    def __init__(self, what, value, bound):
        super().__init__(f"{what}={value} exceeds the configured bound {bound}")
        self.what = what
        self.value = value
        self.bound = bound
