"""Exception hierarchy shared by the library and the CLI."""


class BlockLisError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(BlockLisError, ValueError):
    """Input violates an operation's precondition."""


class SizeGuardError(BlockLisError):
    """A quadratic computation would exceed the configured cell limit."""

    def __init__(self, cells: int, limit: int):
        super().__init__(f"dp table of {cells} cells exceeds guard of {limit} cells")
        self.cells = cells
        self.limit = limit


class EstimatorError(BlockLisError):
    """A stage of the estimation pipeline failed."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


class InvalidFamilyError(InvalidInputError):
    """Instance family descriptor violates its invariants."""


class InvariantViolation(BlockLisError):
    """An internal consistency check failed; indicates a bug, not bad input."""
