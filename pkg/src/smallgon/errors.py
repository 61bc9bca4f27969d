"""Exception hierarchy. Each family maps to a CLI exit code."""


class SmallgonError(Exception):
    exit_code = 1


class ParameterError(SmallgonError, ValueError):
    exit_code = 2


class DegenerateInputError(ParameterError):
    """Too few points, or all points collinear."""


class CapacityError(SmallgonError):
    exit_code = 3


class ValidationError(SmallgonError):
    exit_code = 4


class ConvexityError(ValidationError):
    pass


class NumericalFailure(ValidationError):
    pass


class ConstructionError(ValidationError):
    """A built polygon failed one of its post-construction checks."""

    def __init__(self, check: str, detail: str):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}")
