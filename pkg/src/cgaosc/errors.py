"""Exception types shared across the package."""


class CgaError(Exception):
    """Base class for all package errors."""


class NotMonomial(CgaError):
    pass


class ZeroDivisor(CgaError):
    pass


class BadEll(CgaError):
    pass


class ChartMismatch(CgaError):
    pass


class RelationViolation(CgaError):
    pass


class UnsupportedWeight(CgaError):
    pass


class NotClosed(CgaError):
    def __init__(self, pair, residual):
        self.pair = pair
        self.residual = residual
        super().__init__(f"bracket {pair} leaves the span; residual has "
                         f"{len(residual.terms)} terms")


class GradingViolation(CgaError):
    pass


class JacobiFailure(CgaError):
    def __init__(self, triple, residual):
        self.triple = triple
        self.residual = residual
        super().__init__(f"graded Jacobi fails on {triple}")


class NoSolution(CgaError):
    pass


class NonUniqueSolution(CgaError):
    pass


class NonLaurentSolution(CgaError):
    pass


class NotProportional(CgaError):
    def __init__(self, label, residual):
        self.label = label
        self.residual = residual
        super().__init__(f"on-shell certificate fails for {label}")


class Mismatch(CgaError):
    def __init__(self, label, residual):
        self.label = label
        self.residual = residual
        super().__init__(f"mismatch at {label}")


class NotTriangular(CgaError):
    pass


class DiagonalDependsOnC(CgaError):
    pass


class NormalizationUnavailable(CgaError):
    pass


class Inconsistent(CgaError):
    pass
