"""Exception types raised across the package.

Domain errors derive from :class:`StreamZerosError`; the CLI maps them to exit
code 1, while argument problems are usage errors (exit code 2).
"""


class StreamZerosError(ValueError):
    """Base class for all domain errors."""


class ParseError(StreamZerosError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class NonSummable(StreamZerosError):
    """The defining sum of a convolution is not guaranteed to converge."""


class NotCoprime(StreamZerosError):
    pass


class NotUnimodular(StreamZerosError):
    pass


class RootIsolationFailure(StreamZerosError):
    pass


class Indeterminate(StreamZerosError):
    """A root disk straddles the tolerance band around the unit circle."""


class NotHyperbolic(StreamZerosError):
    pass


class UnsupportedConstantTerm(StreamZerosError):
    pass


class UnsupportedDegree(StreamZerosError):
    pass


class NegativeDiscriminant(StreamZerosError):
    pass


class BranchOutOfRange(StreamZerosError):
    pass


class NotAnOrbit(StreamZerosError):
    pass


class NotAdmissible(StreamZerosError):
    pass


class InconsistentWindow(StreamZerosError):
    pass


class WindowTooShort(StreamZerosError):
    pass


class RepeatedRoots(StreamZerosError):
    pass


class SquareD(StreamZerosError):
    pass


class RationalInput(StreamZerosError):
    pass
