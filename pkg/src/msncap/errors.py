"""Exception hierarchy shared by every module."""


class MsnError(ValueError):
    """Base class for all domain errors raised by msncap."""


# network well-formedness
class DuplicatePair(MsnError):
    pass


class OutOfRangeId(MsnError):
    pass


class NotExhaustive(MsnError):
    pass


class EmptyNetwork(MsnError):
    pass


class EventIndexOutOfRange(MsnError, IndexError):
    pass


# geometry
class TieRejected(MsnError):
    pass


class ConcurrentLines(MsnError):
    pass


class IdenticalLines(MsnError):
    pass


class InvalidMap(MsnError):
    pass


class DegenerateSampler(MsnError):
    pass


# constructions / formulas
class BadParams(MsnError):
    pass


class ConstructionFailed(MsnError):
    pass


# wiring / realizability
class RepeatedCrossing(MsnError):
    pass


class NonRealizable(MsnError):
    """No wiring diagram produces the network.

    ``index`` is the 1-based event index at which the check failed.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotClassPartition(MsnError):
    pass


class UnsupportedSlopeCount(MsnError):
    pass


# lp
class MalformedSystem(MsnError):
    pass


class TooLarge(MsnError):
    pass
