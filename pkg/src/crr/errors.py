"""Exception hierarchy shared by all crr modules."""


class CrrError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(CrrError, ValueError):
    """Matrix dimensions do not fit the requested operation."""


class ContractError(CrrError, ValueError):
    """A documented precondition of an operation was violated."""


class ParseError(CrrError, ValueError):
    """Malformed text input. Carries the 1-based line number when known."""

    def __init__(self, message, line_no=None, line=None):
        self.line_no = line_no
        self.line = line
        if line_no is not None:
            message = f"line {line_no}: {message}"
            if line is not None:
                message += f" ({line.strip()!r})"
        super().__init__(message)


class DecodeError(CrrError):
    """A solver assignment does not cover the variables needed for a model."""


class BudgetExceeded(CrrError):
    """Brute-force enumeration would exceed the configured budget."""


class IntegrityError(CrrError):
    """A backend claimed sat but its model does not verify."""


class SolverSpawnError(CrrError):
    """The external solver process could not be started."""


class SolverExitError(CrrError):
    """The external solver exited with an unexpected status."""

    def __init__(self, message, returncode=None, output=""):
        self.returncode = returncode
        self.output = output
        super().__init__(message)
