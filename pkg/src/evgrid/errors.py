"""Exception types shared across the package."""


class EvgridError(Exception):
    """Base class for all evgrid errors."""


class ValidationError(EvgridError):
    """Invalid configuration, dataset content, or operation input.

    Mapped to exit code 1 by the CLI. I/O failures (missing files,
    unreadable paths) are left as OSError and map to exit code 2.
    """


class DataFormatError(ValidationError):
    """Malformed dataset content; message carries file and line context."""

    def __init__(self, message: str, *, path=None, line: int | None = None):
        ctx = ""
        if path is not None:
            ctx += f"{path}"
        if line is not None:
            ctx += f":{line}"
        super().__init__(f"{ctx}: {message}" if ctx else message)
        self.path = path
        self.line = line
