"""Exception types shared across modules."""


class RootSuperError(Exception):
    """Base class for all library errors."""


class InvalidRanks(RootSuperError):
    pass


class InvalidLambda(RootSuperError):
    pass


class UnknownSymbol(RootSuperError):
    pass


class NotARoot(RootSuperError):
    pass


class NotReflectable(RootSuperError):
    pass


class BrokenString(RootSuperError):
    pass


class Unrecognized(RootSuperError):
    pass


class NoBaseFound(RootSuperError):
    pass


class IncompatibleFamily(RootSuperError):
    pass


class NotAntisupersymmetric(RootSuperError):
    pass


class ParityViolation(RootSuperError):
    pass


class DimensionMismatch(RootSuperError):
    pass


class SingularCartanForm(RootSuperError):
    pass


class NotDiagonalizable(RootSuperError):
    pass


class NonSelfCentralizing(RootSuperError):
    pass


class NotNilpotent(RootSuperError):
    pass


class NoTriple(RootSuperError):
    pass


class SumNotRoot(RootSuperError):
    pass


class TypeA11Unsupported(RootSuperError):
    pass


class SeedMissing(RootSuperError):
    pass


class InternalInconsistency(RootSuperError):
    pass


class EmptyOddPart(RootSuperError):
    pass


class BadIndexSets(RootSuperError):
    pass


class NotClosed(RootSuperError):
    pass


class CongruenceFails(RootSuperError):
    pass


class NotSubset(RootSuperError):
    pass


class ZeroBracket(RootSuperError):
    pass


class SeedMismatch(RootSuperError):
    pass


class NotHomomorphism(RootSuperError):
    pass
