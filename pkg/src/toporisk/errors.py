"""Exception hierarchy.

``InputError`` subclasses describe bad data or bad configuration (CLI exit
code 1); ``ComputationError`` subclasses describe failures inside the
numerical stages (exit code 2).
"""


class ToporiskError(Exception):
    pass


class InputError(ToporiskError):
    pass


class ComputationError(ToporiskError):
    pass


class ConfigError(InputError):
    pass


class IngestError(InputError):
    pass


class EmptyInput(IngestError):
    def __init__(self, msg="input contains no data rows"):
        super().__init__(msg)


class _RowError(IngestError):
    what = "bad row"

    def __init__(self, index, detail=""):
        self.index = index
        msg = f"{self.what} at row {index}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class MalformedRow(_RowError):
    what = "malformed row"


class NonPositivePrice(_RowError):
    what = "non-positive price"


class NonMonotonicTimestamps(_RowError):
    what = "timestamps not strictly increasing"


class ColumnNotFound(IngestError):
    def __init__(self, column, header):
        self.column = column
        super().__init__(f"column {column!r} not in header {list(header)}")


class WrongKind(InputError):
    def __init__(self, expected, actual):
        self.expected = expected
        self.actual = actual
        super().__init__(f"expected series of kind {expected}, got {actual}")


class TooShort(InputError):
    def __init__(self, required, actual):
        self.required = required
        self.actual = actual
        super().__init__(f"series needs at least {required} values, got {actual}")


class ZeroVariance(InputError):
    def __init__(self, msg="series is constant; standard deviation is zero"):
        super().__init__(msg)


class SeriesTooShort(InputError):
    def __init__(self, required, actual):
        self.required = required
        self.actual = actual
        super().__init__(
            f"delay embedding needs at least {required} samples, got {actual}"
        )


class DimensionTooLarge(InputError):
    def __init__(self, max_dim, n):
        self.max_dim = max_dim
        self.n = n
        super().__init__(f"max_dim={max_dim} must be smaller than point count {n}")


class DimensionMismatch(ComputationError):
    def __init__(self, a, b):
        super().__init__(f"ambient dimensions differ: {a} vs {b}")


class FaceNotFound(ComputationError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"a face of filtration simplex {column} is missing")


class ZeroVolatility(ComputationError):
    def __init__(self, msg="adjusted volatility must be positive"):
        super().__init__(msg)


class StageError(ToporiskError):
    """Wraps an error raised inside a named pipeline stage."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")

    @property
    def exit_code(self):
        return 1 if isinstance(self.cause, InputError) else 2
