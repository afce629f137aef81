"""Shared exception types with stable CLI exit codes."""


class InputError(ValueError):
    """A precondition on user-supplied data was violated (exit code 2)."""


class ResourceError(RuntimeError):
    """A size/time budget would be exceeded (exit code 3)."""

    def __init__(self, message, required=None, allowed=None):
        if required is not None and allowed is not None:
            message = f"{message} (required {required}, allowed {allowed})"
        super().__init__(message)
        self.required = required
        self.allowed = allowed
