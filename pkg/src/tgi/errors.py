"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operand dimensions are incompatible with the requested operation."""


class NumericalError(RuntimeError):
    """A dense linear-algebra kernel failed to produce a usable result."""


class InconsistentSystemError(NumericalError):
    """The right-hand side lies outside the subspace required for a solution."""
