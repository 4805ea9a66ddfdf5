"""Exception types raised across the package."""


class BinformError(Exception):
    pass


class DegreeCapError(BinformError):
    """A configured size limit (degree cap, power cap) was exceeded."""


class DimensionError(BinformError):
    """Matrix dimensions do not admit the requested operation."""


class UnsupportedInputError(BinformError):
    """The operation is only defined for specialized (rational) inputs."""


class ConsistencyError(BinformError):
    """An internal cross-check failed (inexact division, degree mismatch...)."""


class RangeError(BinformError):
    """An index parameter lies outside its admissible range."""


class OutOfRegimeError(BinformError):
    """Parameters outside the regime the determinantal formula covers."""


class ParseError(BinformError):
    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (column {position + 1})")
        self.position = position
