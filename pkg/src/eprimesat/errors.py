"""Exception hierarchy. Every user-facing failure derives from EPrimeError."""


class EPrimeError(Exception):
    """Base for all model/instance/usage errors."""

    def __init__(self, msg, line=None, col=None):
        self.msg = msg
        self.line = line
        self.col = col
        super().__init__(str(self))

    def __str__(self):
        if self.line is not None:
            return f"line {self.line}:{self.col}: {self.msg}"
        return self.msg


class LexError(EPrimeError):
    pass


class ParseError(EPrimeError):
    pass


class ModelError(EPrimeError):
    """Static errors in the model: types, duplicate names, bad structure."""


class InstanceError(EPrimeError):
    """Errors tied to parameter values: overflow, failed where, bad bindings."""


class CnfLimitError(EPrimeError):
    """Clause budget given by -cnflimit was reached."""


class TailorTimeoutError(EPrimeError):
    """Wall-clock budget given by -timelimit was exhausted while tailoring."""


class SolverOutputError(EPrimeError):
    """External solver output was not recognisable."""
