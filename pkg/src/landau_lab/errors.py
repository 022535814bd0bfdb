"""Exception hierarchy.  Everything raised on purpose derives from LandauLabError."""


class LandauLabError(Exception):
    pass


class DomainError(LandauLabError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class CoverageError(LandauLabError):
    """The zero table does not reach the heights a computation needs."""


class ValidationError(LandauLabError, ValueError):
    """A zero table violates its invariants."""


class ZeroFileParseError(LandauLabError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class IncompleteError(LandauLabError):
    """Gram-block scan could not find every expected sign change."""

    def __init__(self, message: str, block: tuple[int, int]):
        self.block = block
        super().__init__(message)


class GeometryError(LandauLabError, ValueError):
    """Histogram grids with different windows or bin counts."""


class ConfigError(LandauLabError, ValueError):
    """Invalid command-line configuration."""
