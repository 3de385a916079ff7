"""Exception hierarchy shared by every module."""


class DDSError(Exception):
    """Base class for all library errors."""


class DegenerateDeformation(DDSError, ValueError):
    pass


class PoleAtZ(DDSError, ValueError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class BranchPoint(DDSError, ValueError):
    pass


class ZeroModeIntertwine(DDSError, ValueError):
    pass


class DegenerateExtension(DDSError, ValueError):
    pass


class PoleOnGrid(DDSError, ValueError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class DegenerateDenominator(DDSError, ZeroDivisionError):
    pass


class NoRealSolution(DDSError):
    pass


class InconsistentMatch(DDSError):
    pass


class OutOfLadder(DDSError, IndexError):
    pass


class OutOfDomain(DDSError, ValueError):
    pass


class OutOfRange(DDSError, ValueError):
    pass


class NonMonotone(DDSError, ValueError):
    pass


class ResidualTooLarge(DDSError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SolverFailure(DDSError, RuntimeError):
    pass


class DifferentiationNoise(DDSError):
    pass


class DegenerateR2(DDSError, ZeroDivisionError):
    pass


class InvalidSuperpotential(DDSError, ValueError):
    pass
