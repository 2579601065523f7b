"""Exception hierarchy shared by every slicelab module."""


class SliceLabError(Exception):
    """Base class for all library errors."""


class InputError(SliceLabError, ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class NumericalFailure(SliceLabError, ArithmeticError):
    """An internal numerical procedure could not complete (CLI exit code 3)."""


# clifford_core
class SignatureMismatch(InputError):
    pass


class BladeIndexError(InputError, IndexError):
    pass


class NotAdmissible(InputError):
    pass


class NotOrthogonal(InputError):
    pass


class NotAnticommuting(InputError):
    pass


class BadProduct(InputError):
    pass


class NotInSpan(InputError):
    pass


class DegenerateSpan(NumericalFailure):
    pass


# stem / slice engines
class OutOfDomain(InputError):
    pass


class NotInSliceCone(InputError):
    pass


class NonVanishingRealPart(InputError):
    """F1 does not vanish at a real point, so the stem cannot be equivariant."""


class NotSlicePreserving(InputError):
    pass


# dirac_check
class SymbolicUnavailable(InputError):
    pass


class NonIntrinsic(InputError):
    pass


class DegreeTooHigh(InputError):
    pass


# growth_suite
class BisectionFailed(NumericalFailure):
    pass


class HypothesisViolated(SliceLabError):
    def __init__(self, hypothesis, witness=None):
        super().__init__(f"hypothesis violated: {hypothesis}")
        self.hypothesis = hypothesis
        self.witness = witness


class SingularJacobian(NumericalFailure):
    pass


# cli
class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class ValidationError(InputError):
    def __init__(self, field, reason):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason
