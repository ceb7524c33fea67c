"""Exception hierarchy for oscdamp.

Numerical failures (unstable matrices, singular pencils, solver breakdowns)
are distinguished from structural/input errors so the CLI can map them to
exit codes: numerical -> 1, input/config -> 2.
"""


class OscdampError(Exception):
    """Base class for all oscdamp errors."""


class NumericalError(OscdampError):
    """Base class for numerical failures (CLI exit code 1)."""


class InputError(OscdampError):
    """Base class for structural/input errors (CLI exit code 2)."""


# --- numerical ---------------------------------------------------------

class NotHurwitz(NumericalError):
    """A matrix required to be Hurwitz has an eigenvalue with Re >= -1e-12."""


class SingularPencil(NumericalError):
    """Sylvester spectra overlap: lambda_i(A1) + lambda_j(A2) ~ 0."""


class ConvergenceFailure(NumericalError):
    """An iterative eigensolver failed to converge."""


class SingularAtFrequency(NumericalError):
    """j*omega coincides with an eigenvalue of A."""


class RiccatiFailure(NumericalError):
    """The algebraic Riccati equation solver failed."""


class NotStabilizable(NumericalError):
    """(A, B) has an uncontrollable unstable mode."""


class StabilizationLost(NumericalError):
    """No Armijo step keeps the closed loop Hurwitz."""


class StructureNotStabilizing(NumericalError):
    """The requested sparsity pattern admits no stabilizing gain."""


# --- structural / input ------------------------------------------------

class DimensionMismatch(InputError):
    """Matrix shapes are incompatible with the operation."""


class BadDimensions(InputError):
    """Invalid size parameters (e.g. N < 2 or N > n)."""


class InvalidLaplacian(InputError):
    """Coupling matrix is not a symmetric zero-row-sum Laplacian."""


class MissingFrequencyState(InputError):
    """A generator has no identified frequency state to drive its PSS."""


class SymmetryViolated(InputError):
    """A @ [1; 0] != 0: the model breaks rotational symmetry."""


class NotRelativeGain(InputError):
    """K @ [1; 0] != 0: the gain reacts to the absolute mean angle."""


class IncompatibleGain(InputError):
    """A feedback gain does not match the model dimensions."""


class SchemaViolation(InputError):
    """A model/network file does not match the documented JSON schema."""


class NonFiniteEntry(InputError):
    """A matrix contains NaN or Inf entries."""
