"""Exception hierarchy shared by all modules."""


class FqUmbralError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(FqUmbralError, ValueError):
    pass


class FieldTooLarge(FqUmbralError, ValueError):
    pass


class DivisionByZero(FqUmbralError, ZeroDivisionError):
    pass


class QthRootNotExist(FqUmbralError, ArithmeticError):
    """A q-th root was requested of a rational function that is not a q-th power.

    For delta operators this means delta(u) has left F_q(x): the inverse
    Frobenius of an eigenvalue such as [n] is not rational.
    """


class ConstantTermObstruction(FqUmbralError, ArithmeticError):
    """Negative Frobenius shift of a polynomial with a nonzero low coefficient."""

    def __init__(self, level: int):
        super().__init__(f"coefficient at level {level} is nonzero; inverse Frobenius undefined")
        self.level = level


class NotPolynomial(FqUmbralError, ArithmeticError):
    """An exact division that must produce a polynomial did not."""


class ExprSyntaxError(FqUmbralError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSymbol(ExprSyntaxError):
    pass


class EnumerationTooLarge(FqUmbralError, ValueError):
    pass


class OrderExceeded(FqUmbralError, ValueError):
    """Input degree exceeds the order the operator tables were built for."""


class NotDeltaOperator(FqUmbralError, ValueError):
    def __init__(self, n: int):
        super().__init__(f"S_{n} = 0: sigma sequence does not define a delta operator")
        self.n = n


class HypothesisNotMet(FqUmbralError):
    """The norm hypotheses |sigma_1| = 1, |sigma_l| <= 1 fail."""


class DivergentAtPoint(FqUmbralError, ArithmeticError):
    def __init__(self, j: int, detail: str = ""):
        msg = f"series diverges at the given point (term {j} does not increase in valuation)"
        super().__init__(msg + (f": {detail}" if detail else ""))
        self.j = j


class ZeroToPrecision(FqUmbralError, ZeroDivisionError):
    pass


class InsufficientTerms(FqUmbralError, ValueError):
    """A truncated coefficient list ran out before the requested precision was reached."""
