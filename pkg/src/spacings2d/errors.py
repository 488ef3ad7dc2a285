"""Exception hierarchy.  ``name`` is the structured error name shown by the CLI."""


class SpacingsError(Exception):
    name = "SpacingsError"


class ParseError(SpacingsError, ValueError):
    name = "ParseError"

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DomainError(SpacingsError, ValueError):
    name = "DomainError"


class EmptyPatternError(SpacingsError, ValueError):
    name = "EmptyPatternError"


class ContractError(SpacingsError, ValueError):
    name = "ContractError"


class UnknownKernelError(SpacingsError, LookupError):
    name = "UnknownKernelError"


class DegenerateSpacingError(SpacingsError, ArithmeticError):
    """A zero spacing reached a kernel that is undefined at 0."""

    name = "DegenerateSpacingError"


class DegenerateStatisticError(SpacingsError, ArithmeticError):
    """The limiting variance is zero, so there is nothing to standardize."""

    name = "DegenerateStatisticError"


class NumericalDomainError(SpacingsError, ArithmeticError):
    name = "NumericalDomainError"


class NumericalConsistencyError(SpacingsError, ArithmeticError):
    name = "NumericalConsistencyError"


class InfeasibleError(SpacingsError, RuntimeError):
    name = "InfeasibleError"
