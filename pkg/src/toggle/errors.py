"""Exception types shared across the package.

The CLI maps these onto exit codes: input problems exit 2, budget problems
exit 3.
"""


class ToggleError(Exception):
    pass


class InputError(ToggleError, ValueError):
    """Malformed input: bad file line, out-of-range index, invalid size."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RuleViolation(ToggleError):
    """An illegal Toggle move was requested."""

    def __init__(self, vertex, sigma_before, sigma_after, stage=None):
        self.vertex = vertex
        self.sigma_before = sigma_before
        self.sigma_after = sigma_after
        self.stage = stage
        where = f" at stage {stage}" if stage is not None else ""
        super().__init__(
            f"illegal move at vertex {vertex}{where}: "
            f"sigma {sigma_before} -> {sigma_after} does not decrease"
        )


class BudgetExceeded(ToggleError):
    """A search ran past its configured memo or state budget."""

    def __init__(self, message, stats=None):
        self.stats = dict(stats or {})
        if self.stats:
            detail = ", ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
            message = f"{message} ({detail})"
        super().__init__(message)


class ConstructionError(ToggleError):
    """Internal audit failure while wiring a reduction gadget."""
