"""Typed errors raised by the services."""


class NGError(Exception):
    """Base error with a machine-readable type and a human message."""

    def __init__(self, error_type: str, message: str):
        self.error_type = error_type
        self.message = message
        super().__init__(message)


class ContractViolation(NGError):
    """An operation was called outside its precondition."""

    def __init__(self, message: str, error_type: str = "contract"):
        super().__init__(error_type, message)


class NoRealEigenvalueError(ContractViolation):
    def __init__(self, message: str):
        super().__init__(message, error_type="no_real_eigenvalue")


class CapExceededError(ContractViolation):
    def __init__(self, message: str):
        super().__init__(message, error_type="cap")


class TransformError(ContractViolation):
    """A transform precondition failed or its cell schedule stalled."""

    def __init__(self, message: str, inequality: str | None = None):
        self.inequality = inequality
        super().__init__(message, error_type="transform")


class ProfileError(NGError):
    """Malformed staircase profile; index points at the first bad entry."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__("profile", message)


class GraphFormatError(NGError):
    """Malformed graph input; token and byte offset locate the problem."""

    def __init__(self, message: str, token: str = "", offset: int = 0):
        self.token = token
        self.offset = offset
        super().__init__("graph_format", message)
