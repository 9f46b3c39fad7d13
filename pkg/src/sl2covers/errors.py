"""Exception types shared across the package."""


class InvertZero(ZeroDivisionError):
    """Inversion of an exact zero, or of a value indistinguishable from zero."""


class DivisionByNonUnit(ArithmeticError):
    """Division by a ring element that is not invertible (e.g. by p in Z/p^n)."""


class InsufficientPrecision(ArithmeticError):
    """A capped-precision value does not carry enough digits for the request."""


class NonInvertible(ArithmeticError):
    """A matrix inversion required by a transform is not defined at this input."""


class NotInModel(ValueError):
    """A p-adic group element does not lie in the requested integral model."""


class NotRegularUnipotent(ValueError):
    """A fiber or stalk was requested over a point outside the regular unipotent locus."""


class NotACoverMorphism(ValueError):
    """A claimed map between covers fails the defining compatibility identity."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured size budget."""


class LevelMismatch(ValueError):
    """Operands live at different congruence levels (or over different primes)."""


class ModelMismatch(ValueError):
    """Operands are attached to different integral models where one is required."""


class ZeroFunction(ValueError):
    """An operation that normalizes by a function's norm received the zero function."""


class NoMatch(LookupError):
    """A search over character pairs found no candidate within tolerance."""
