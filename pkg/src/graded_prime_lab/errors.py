"""Exception hierarchy.

Every failure carries an optional ``witness`` so callers (and the CLI) can
report exactly what went wrong.
"""


class LabError(Exception):
    """Base class; ``witness`` is any JSON-able object or None."""

    exit_code = 2

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(LabError):
    """Malformed or inconsistent user input."""


class CapExceeded(LabError):
    exit_code = 3


class TheoremViolation(LabError):
    """A proven statement failed on a concrete instance: always a bug."""

    exit_code = 4


class CorrespondenceViolation(TheoremViolation):
    pass


class InternalExhaustion(TheoremViolation):
    pass


class NotASubgroup(InputError):
    pass


class NotNormal(InputError):
    pass


class BadSubgroup(InputError):
    pass


class Unknown(InputError):
    pass


class NotAssociative(InputError):
    pass


class BadUnit(InputError):
    pass


class NotUnital(InputError):
    pass


class NotSUnital(InputError):
    pass


class NotGraded(InputError):
    pass


class NotEpsilonStrong(InputError):
    pass


class MalformedDatum(InputError):
    pass


class MalformedData(InputError):
    pass


class StrategyUnavailable(InputError):
    pass


class NotAHomomorphism(InputError):
    pass


class NotAutomorphism(InputError):
    pass


class AxiomViolation(InputError):
    pass


class NotInvertible(InputError):
    pass


class NotAcyclic(InputError):
    pass


class ZeroInput(InputError):
    pass
