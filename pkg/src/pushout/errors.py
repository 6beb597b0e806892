"""Exception hierarchy.

``ValidationError`` covers structural failures of input data (exit code 1 in
the CLI); ``DocumentError`` covers unreadable or malformed documents (exit
code 2).
"""


class PushoutError(Exception):
    pass


class ValidationError(PushoutError):
    """Input data violates an axiom; ``indices`` names the failing basis indices."""

    def __init__(self, message: str, *indices):
        super().__init__(message)
        self.indices = indices


class DocumentError(PushoutError):
    pass


class NotAssociative(ValidationError):
    pass


class NotInjective(ValidationError):
    pass


class NotMultiplicative(ValidationError):
    pass


class NotIdeal(ValidationError):
    pass


class NotLeftAction(ValidationError):
    pass


class NotRightAction(ValidationError):
    pass


class ActionsDontCommute(ValidationError):
    pass


class NotBimoduleMap(ValidationError):
    pass


class RestrictionMismatch(ValidationError):
    pass


class NotClosed(PushoutError):
    """An action formula left the solution space (internal consistency failure)."""


class AnnihilatorNonzero(ValidationError):
    pass


class AbsorptionFails(ValidationError):
    pass


class NotADerivation(ValidationError):
    pass


class PreconditionFailed(ValidationError):
    pass


class SquareSpanDeficient(PreconditionFailed):
    pass


class NotInduced(PreconditionFailed):
    pass
