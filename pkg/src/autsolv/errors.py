"""Exception types shared across the package."""


class AutsolvError(Exception):
    """Base class for every error raised by autsolv."""


class FieldError(AutsolvError):
    pass


class ArityError(AutsolvError):
    """Field or number-of-variables mismatch, or a variable index out of range."""


class ZeroPolynomialError(AutsolvError):
    pass


class SingularMatrixError(AutsolvError):
    pass


class NotAdmissibleError(AutsolvError):
    """A generator has a constant or linear part, so I is not inside <X>^2."""


class InfiniteDimensionalError(AutsolvError):
    pass


class TooLargeError(AutsolvError):
    pass


class NotHomogeneousError(AutsolvError):
    pass


class ConflictError(AutsolvError):
    """Rules of opposite polarity fired on the same input.

    The underlying theorems cannot disagree, so this always indicates a bug.
    """


class ParseError(AutsolvError):
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
