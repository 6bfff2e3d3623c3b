"""Exception types raised by the engine."""


class CovlieError(Exception):
    """Base class; carries an optional structured witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCyclic(CovlieError):
    pass


class NotInjective(CovlieError):
    pass


class NotAnIdeal(CovlieError):
    pass


class NotAutomorphism(CovlieError):
    pass


class FormNotPreserved(CovlieError):
    pass


class NotFinite(CovlieError):
    pass


class WindowExceeded(CovlieError):
    def __init__(self, degree, window):
        super().__init__(f"degree {degree} outside window [-{window}, {window}]",
                         witness={"degree": degree, "window": window})
        self.degree = degree
        self.window = window


class NotSimultaneouslyDiagonalizable(CovlieError):
    pass


class UnrecognizedRootSystem(CovlieError):
    pass


class NotIntegerSemisimple(CovlieError):
    pass


class NotFound(CovlieError):
    pass


class GroupSpecError(CovlieError):
    pass
