class MtaminError(Exception):
    """Base class for domain errors raised by this package."""


class DimensionError(MtaminError, ValueError):
    pass


class NoSolution(MtaminError):
    """A right-hand side row lies outside the row space of the coefficient matrix."""


class NotUnique(MtaminError):
    """The coefficient rows are linearly dependent, so a solution is not unique."""


class AlphabetError(MtaminError, ValueError):
    pass


class ArityError(MtaminError, ValueError):
    pass


class EnumerationCapExceeded(MtaminError):
    pass


class SizeGuardExceeded(MtaminError):
    pass


class ParseError(MtaminError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class CircuitDivisionByZero(MtaminError, ZeroDivisionError):
    def __init__(self, gate):
        self.gate = gate
        super().__init__(f"division by zero at gate g{gate}")


class UnassignedVariable(MtaminError, KeyError):
    def __init__(self, var):
        self.var = var
        super().__init__(f"variable x{var} is not assigned")


class BadPrime(MtaminError):
    pass


class SingularFragment(MtaminError):
    pass
