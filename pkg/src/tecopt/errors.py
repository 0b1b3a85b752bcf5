"""Exception hierarchy shared by every tecopt module.

Input problems raise :class:`ValidationError`; situations where valid inputs
land outside the region where the cooler model means anything raise a
:class:`ModelError` subclass. The CLI maps these onto its exit codes.
"""


class TecError(Exception):
    """Base class for all tecopt errors."""


class ValidationError(TecError, ValueError):
    """An input violates a type invariant. ``field`` names the offender."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ModelError(TecError):
    """Valid inputs, but the model is undefined or degenerate there."""


class SingularSystem(ModelError):
    def __init__(self, determinant, scale):
        self.determinant = determinant
        self.scale = scale
        super().__init__(
            f"heat-balance system is singular (det={determinant:.3e}, "
            f"coefficient scale={scale:.3e})"
        )


class NonPhysicalTemperature(ModelError):
    pass


class DegenerateGradient(ModelError):
    pass


class NoUsefulCooling(ModelError):
    pass


class NoDrive(ModelError):
    pass


class InfeasibleProblem(ModelError):
    pass


class UnstableStep(ModelError):
    pass
