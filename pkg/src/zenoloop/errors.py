"""Exception hierarchy."""


class ZenoLoopError(Exception):
    pass


class DomainError(ZenoLoopError, ValueError):
    """An argument lies outside the domain of the operation."""


class UndefinedMomentsError(ZenoLoopError, ArithmeticError):
    """Moments requested for a mixture with zero norm."""


class InsufficientDataError(ZenoLoopError, ValueError):
    """An estimator received no usable detections."""


class ConfigError(ZenoLoopError, ValueError):
    """Invalid run configuration. ``line`` is 1-based when known."""

    def __init__(self, message, path=None, line=None):
        self.message = message
        self.path = path
        self.line = line
        super().__init__(self.format())

    def format(self):
        where = ""
        if self.path is not None:
            where = f"{self.path}:"
            if self.line is not None:
                where += f"{self.line}:"
            where += " "
        return f"{where}{self.message}"
