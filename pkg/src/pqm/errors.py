"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`PQMError`,
which the CLI maps to exit code 1.  Class names double as the error names
printed by the CLI.
"""


class PQMError(Exception):
    """Base class for all domain errors."""


# partitions
class EmptyBlock(PQMError):
    pass


class OverlappingBlocks(PQMError):
    pass


class NonExhaustive(PQMError):
    pass


class IndexOutOfRange(PQMError):
    pass


class UniverseMismatch(PQMError):
    pass


class EmptyList(PQMError):
    pass


# probability / attributes
class InvalidDistribution(PQMError):
    pass


class SizeMismatch(PQMError):
    pass


# linear algebra and quantum
class DimensionMismatch(PQMError):
    pass


class NotSquare(PQMError):
    pass


class NotOrthonormal(PQMError):
    pass


class NotNormalized(PQMError):
    pass


class InvalidDensity(PQMError):
    pass


class UnknownEigenvalue(PQMError):
    pass


class NonCommutingObservables(PQMError):
    pass


class AmbientMismatch(PQMError):
    pass


class NotADSD(PQMError):
    pass


class PropositionViolated(PQMError):
    """SE and ker[F,G] disagreed.  Signals a bug, never expected."""


# GF(2)
class OddDimension(PQMError):
    pass


class RankDeficient(PQMError):
    pass


# occupancy statistics
class KExceedsN(PQMError):
    pass


class InvalidOccupation(PQMError):
    pass


# groups
class InvalidGroup(PQMError):
    pass


class InvalidRep(PQMError):
    pass


class NotCommuting(PQMError):
    pass


class NotInvolution(PQMError):
    pass


class NonCommutingGenerators(PQMError):
    pass
