"""Exception hierarchy shared by the lattice and matrix engines."""


class JordanLatError(Exception):
    """Base class for every error raised by jordanlat."""


class InputError(JordanLatError):
    """Malformed input: unknown labels, bad file contents, bad parameters."""


class FormatError(InputError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


# -- lattice construction -------------------------------------------------

class CycleDetected(InputError):
    pass


class NotALattice(InputError):
    def __init__(self, message, witness):
        self.witness = witness
        super().__init__(message)


class NoBoundedStructure(InputError):
    pass


class NotComparable(JordanLatError):
    pass


class TooLarge(InputError):
    def __init__(self, message, count):
        self.count = count
        super().__init__(message)


# -- join-homomorphisms ----------------------------------------------------

class NotJoinHom(InputError):
    def __init__(self, message, witness):
        self.witness = witness
        super().__init__(message)


class ZeroNotFixed(InputError):
    pass


# -- base construction / verification ---------------------------------------

class NotNilpotent(JordanLatError):
    def __init__(self, message, limit=None):
        self.limit = limit
        super().__init__(message)


class ConditionsNotMet(JordanLatError):
    """One of JNB1-JNB3 fails; ``report`` holds the witnesses."""

    def __init__(self, message, report):
        self.report = report
        super().__init__(message)


class VerificationFailed(JordanLatError):
    def __init__(self, detail):
        self.detail = detail
        super().__init__(detail)


class NoPreimage(JordanLatError):
    pass


class NoAtomPreimage(JordanLatError):
    pass


class Stalled(JordanLatError):
    pass


class HypothesesNotMet(JordanLatError):
    pass


class EmptyBase(JordanLatError):
    pass


class DimensionMismatch(InputError):
    pass


class CrossValidationFailed(JordanLatError):
    def __init__(self, leg, detail):
        self.leg = leg
        self.detail = detail
        super().__init__(f"leg {leg} failed: {detail}")
