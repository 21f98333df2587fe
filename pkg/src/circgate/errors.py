"""Exception types shared across the package.

The CLI maps these onto exit codes: ValidationError -> 1, tolerance
breaches -> 2, NumericalError and subclasses -> 3.
"""


class ValidationError(ValueError):
    """Invalid user input: parameters, configuration keys, or grids."""


class NumericalError(RuntimeError):
    """A numerical routine violated its contract."""


class NotHermitianError(NumericalError):
    """Input matrix expected Hermitian was not, beyond tolerance."""


class NotPositiveSemidefiniteError(NumericalError):
    """Input matrix has an eigenvalue below the allowed negative tolerance."""


class ConvergenceError(NumericalError):
    """An iterative solver failed to meet its convergence criterion."""
