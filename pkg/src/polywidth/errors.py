"""Exception types raised across polywidth."""


class PolywidthError(Exception):
    """Base class for all library errors."""


class SizeError(PolywidthError, ValueError):
    """A size or order parameter is outside its validated range."""


class DomainError(PolywidthError, ValueError):
    """A special-function argument is outside the validated range."""


class BracketError(PolywidthError, ValueError):
    """The root-finding bracket does not contain a sign change."""


class DecompositionError(PolywidthError, ArithmeticError):
    """A matrix factorization or eigen-iteration failed.

    Attributes:
        pivot: Index of the failing Cholesky pivot, if any.
    """

    def __init__(self, message: str, pivot: int | None = None):
        super().__init__(message)
        self.pivot = pivot


class DiscretizationError(PolywidthError):
    """The discrete spectrum violates a structural postcondition."""


class AssemblyError(PolywidthError):
    """Galerkin assembly could not be completed."""


class ConstructionError(PolywidthError):
    """The clamped-to-free eigenfunction map failed a check.

    Attributes:
        mode: Angular wavenumber of the failing eigenfunction.
        index: Index of the failing eigenfunction within its mode.
    """

    def __init__(self, message: str, mode: int, index: int):
        super().__init__(message)
        self.mode = mode
        self.index = index


class RangeError(PolywidthError, IndexError):
    """A requested index lies beyond the computed spectrum."""


class NotInEllipsoidError(PolywidthError, ValueError):
    """Coordinates violate the ellipsoid condition.

    Attributes:
        value: The offending quadratic-form value ``sum(lambda_j * f_j**2)``.
    """

    def __init__(self, value: float):
        super().__init__(f"not in ellipsoid: sum(lambda_j f_j^2) = {value!r} > 1")
        self.value = value


class ShapeError(PolywidthError, ValueError):
    """Array dimensions do not agree."""


class CounterexampleError(PolywidthError, AssertionError):
    """A random trial violated a proven lower bound.

    Attributes:
        basis: Orthonormal basis of the offending subspace.
        distance: The distance that fell below the bound.
    """

    def __init__(self, message: str, basis, distance: float):
        super().__init__(message)
        self.basis = basis
        self.distance = distance


class WitnessError(PolywidthError, ValueError):
    """The witness direction lies (numerically) inside the proxy subspace."""
