"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands live in different ambient dimensions."""


class UnsupportedDimension(ValueError):
    """Dimension outside the supported range 1..4 (or 1..2 for the zero oracle)."""


class ZeroPolynomialError(ValueError):
    """An operation needs a polynomial that is not identically zero."""


class NotInI0Error(ValueError):
    """The indicator is not locally bounded off the origin."""


class CommonComponentError(ArithmeticError):
    """Two polynomials share a common factor; their zero set is not discrete."""


class ConvergenceError(RuntimeError):
    """An iterative numerical method did not converge."""


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)
