"""Exception hierarchy shared by every module."""


class InflatorKitError(Exception):
    """Base class for all library errors."""


class LiteralSyntaxError(InflatorKitError, ValueError):
    pass


class DomainError(InflatorKitError, ValueError):
    pass


class DivisionByZero(InflatorKitError, ZeroDivisionError):
    pass


class HahnUnsupportedInverse(InflatorKitError, ArithmeticError):
    """Raised when dividing a Hahn series by a non-monomial."""


class FieldMismatch(InflatorKitError, TypeError):
    pass


class NegativeValuation(InflatorKitError, ValueError):
    pass


class DimensionMismatch(InflatorKitError, ValueError):
    pass


class NotALine(InflatorKitError, ValueError):
    pass


class SingularMatrix(InflatorKitError, ValueError):
    pass


class CodomainMismatch(InflatorKitError, ValueError):
    pass


class LevelMismatch(InflatorKitError, ValueError):
    pass


class NotContained(InflatorKitError, ValueError):
    """A subspace that should lie inside another does not (evaluator bug)."""


class SpecError(InflatorKitError, ValueError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"{where}: {message}")


class InternalError(InflatorKitError, RuntimeError):
    pass


class PreconditionError(InflatorKitError, ValueError):
    pass


class NotInRing(InflatorKitError, ValueError):
    pass


class DegenerateProbe(InflatorKitError, ValueError):
    pass


class NotALattice(InflatorKitError, ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness {witness})")


class NotModular(InflatorKitError, ValueError):
    pass


class NotInO(InflatorKitError, ValueError):
    pass


class NoWitness(InflatorKitError, RuntimeError):
    pass
