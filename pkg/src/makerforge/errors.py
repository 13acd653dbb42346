"""Exception types shared across the package."""


class MakerforgeError(Exception):
    """Base class for all domain errors."""


# --- tree construction ---

class UnknownParent(MakerforgeError):
    pass


class ThirdChild(MakerforgeError):
    pass


class SecondRoot(MakerforgeError):
    pass


class NotAncestor(MakerforgeError):
    pass


class UnknownVertex(MakerforgeError):
    pass


class UnknownEdge(MakerforgeError):
    pass


class FrozenHypergraph(MakerforgeError):
    """Mutation attempted on a frozen hypergraph."""


# --- builders / resource guards ---

class OutOfRange(MakerforgeError):
    pass


class TooLarge(MakerforgeError):
    pass


class NotACounterexampleShape(MakerforgeError):
    pass


# --- unit calculus ---

class NotALeaf(MakerforgeError):
    pass


class NotAPartition(MakerforgeError):
    pass


class UnitTooLong(MakerforgeError):
    pass


class SingletonUnit(MakerforgeError):
    pass


class NotPowerOfTwo(MakerforgeError):
    pass


class MixedPower(MakerforgeError):
    pass


class InsufficientUnits(MakerforgeError):
    pass


class ShapeMismatch(MakerforgeError):
    pass


class PropertyPViolation(MakerforgeError):
    pass


# --- game ---

class IllegalMove(MakerforgeError):
    pass


class NoSafeChild(MakerforgeError):
    pass


class EmptyBoard(MakerforgeError):
    pass


# --- coloring ---

class InvalidPairing(MakerforgeError):
    pass


class ResampleBudgetExceeded(MakerforgeError):
    def __init__(self, message, resamples, bad_edges):
        super().__init__(message)
        self.resamples = resamples
        self.bad_edges = bad_edges


class Infeasible(MakerforgeError):
    pass


class GenerationStalled(MakerforgeError):
    pass


# --- serialization ---

class BadDocument(MakerforgeError):
    pass
