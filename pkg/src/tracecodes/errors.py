"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid or mismatched parameters (field, ring or code)."""


class UnsupportedParameterError(ParameterError):
    """Parameters outside a result's hypothesis, such as even m where odd is required."""


class NotInvertibleError(ZeroDivisionError):
    """Inverse requested for zero or a non-unit."""


class FeasibilityError(RuntimeError):
    """Requested computation exceeds an enumeration guard."""


class InconsistencyError(ArithmeticError):
    """A transform produced a non-integral or negative count."""


class ReconstructionError(RuntimeError):
    """A coalition is not qualified to recover the secret."""
