"""Exception types shared across the package."""


class MissingDataError(ValueError):
    """A derived quantity cannot be resolved from the available inputs."""


class CapacityError(ValueError):
    """A requested exact state exceeds the configured mode cap."""


class ConvergenceError(RuntimeError):
    """An iterative scheme exhausted its budget; carries the best estimate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class MaterialsFileError(ValueError):
    """A materials file was rejected; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
