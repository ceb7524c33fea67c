"""Dense LTI numerics: Lyapunov/Sylvester solves, eigendecompositions,
frequency responses.

Lyapunov and Sylvester equations are solved Bartels-Stewart style: a
complex Schur factorization (LAPACK) reduces the equation to triangular
form, and the back-substitution runs in a jitted kernel (see
``_kernels``).  All functions are pure; matrices are never mutated.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from . import _kernels
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NonFiniteEntry,
    NotHurwitz,
    SingularAtFrequency,
    SingularPencil,
)

#: Eigenvalue real parts must lie strictly below this for a Hurwitz verdict.
HURWITZ_TOL = -1e-12


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return a 2-D float/complex array with finite entries."""
    a = np.asarray(a)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a nonempty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteEntry(f"{name} contains NaN/Inf entries")
    return a


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted by (Re, Im) ascending, with matching eigenvectors.

    ``left`` rows are biorthonormal to ``right`` columns
    (left[:, i].conj().T @ right[:, j] = delta_ij) when requested.
    """

    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray | None = None


def spectral_abscissa(A) -> float:
    """max Re(lambda_i(A))."""
    return float(np.max(np.linalg.eigvals(A).real))


def spectral_radius(A) -> float:
    """max |lambda_i(A)|."""
    return float(np.max(np.abs(np.linalg.eigvals(A))))


def is_hurwitz(A) -> bool:
    return spectral_abscissa(A) < HURWITZ_TOL


def _check_hurwitz_diag(diag: np.ndarray, what: str) -> None:
    worst = float(np.max(diag.real))
    if worst >= HURWITZ_TOL:
        raise NotHurwitz(f"{what} has eigenvalue real part {worst:.3e} >= {HURWITZ_TOL}")


def solve_lyapunov(Acl, Qrhs) -> np.ndarray:
    """Solve Acl X + X Acl^T + Qrhs = 0 for symmetric X (Acl Hurwitz).

    Parameters
    ----------
    Acl : (n, n) real array, Hurwitz.
    Qrhs : (n, n) real symmetric array.

    Returns
    -------
    X : (n, n) symmetric array, exactly symmetrized before return.

    Raises
    ------
    NotHurwitz
        If any eigenvalue of Acl has real part >= -1e-12.
    DimensionMismatch
        On incompatible shapes.
    """
    Acl = as_matrix(Acl, "Acl")
    Qrhs = as_matrix(Qrhs, "Qrhs")
    n = Acl.shape[0]
    if Acl.shape[1] != n or Qrhs.shape != (n, n):
        raise DimensionMismatch(f"need square n x n inputs, got {Acl.shape} and {Qrhs.shape}")
    if np.iscomplexobj(Acl) or np.iscomplexobj(Qrhs):
        raise DimensionMismatch("solve_lyapunov expects real matrices")
    T, U = schur(Acl, output="complex")
    _check_hurwitz_diag(np.diag(T), "Acl")
    C = -(U.conj().T @ Qrhs @ U)
    Y = _kernels.tri_lyapunov(np.ascontiguousarray(T), np.ascontiguousarray(C))
    X = (U @ Y @ U.conj().T).real
    return (X + X.T) / 2.0


def gramians(Acl, Wc_rhs, Wo_rhs) -> tuple[np.ndarray, np.ndarray]:
    """Controllability/observability-type Gramian pair from one Schur pass.

    Returns (X, P) with Acl X + X Acl^T + Wc_rhs = 0 and
    Acl^T P + P Acl + Wo_rhs = 0.  Hot path of the gradient evaluation in
    the sparse design loop; semantics match two solve_lyapunov calls.
    """
    Acl = np.asarray(Acl, dtype=float)
    n = Acl.shape[0]
    T, U = schur(Acl, output="complex")
    _check_hurwitz_diag(np.diag(T), "closed-loop matrix")
    T = np.ascontiguousarray(T)
    Uh = U.conj().T
    Y = _kernels.tri_lyapunov(T, np.ascontiguousarray(-(Uh @ Wc_rhs @ U)))
    Z = _kernels.tri_lyapunov_dual(T, np.ascontiguousarray(-(Uh @ Wo_rhs @ U)))
    X = (U @ Y @ Uh).real
    P = (U @ Z @ Uh).real
    return (X + X.T) / 2.0, (P + P.T) / 2.0


def solve_sylvester(A1, A2, C) -> np.ndarray:
    """Solve A1 X + X A2 + C = 0 (spectra of A1 and -A2 disjoint).

    Raises SingularPencil when some lambda_i(A1) + lambda_j(A2) vanishes
    within 1e-10.
    """
    A1 = as_matrix(A1, "A1")
    A2 = as_matrix(A2, "A2")
    C = as_matrix(C, "C")
    p, q = A1.shape[0], A2.shape[0]
    if A1.shape[1] != p or A2.shape[1] != q or C.shape != (p, q):
        raise DimensionMismatch(
            f"need A1 (p,p), A2 (q,q), C (p,q); got {A1.shape}, {A2.shape}, {C.shape}"
        )
    T1, U1 = schur(np.asarray(A1, dtype=float), output="complex")
    T2, U2 = schur(np.asarray(A2, dtype=float), output="complex")
    gaps = np.abs(np.diag(T1)[:, None] + np.diag(T2)[None, :])
    if float(gaps.min()) <= 1e-10:
        raise SingularPencil(
            f"spectra of A1 and -A2 overlap within 1e-10 (min gap {gaps.min():.3e})"
        )
    Ct = -(U1.conj().T @ C @ U2)
    Y = _kernels.tri_sylvester(
        np.ascontiguousarray(T1), np.ascontiguousarray(T2), np.ascontiguousarray(Ct)
    )
    X = U1 @ Y @ U2.conj().T
    return X.real if not (np.iscomplexobj(A1) or np.iscomplexobj(A2) or np.iscomplexobj(C)) else X


def eig(A, left: bool = False) -> EigenDecomposition:
    """Eigendecomposition with deterministic ordering.

    Eigenvalues are sorted ascending by real part, then by imaginary part,
    so conjugate pairs of a real matrix appear adjacently (minus first).
    With ``left=True`` the biorthonormal left eigenvectors are included.
    """
    A = as_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"eig needs a square matrix, got {A.shape}")
    try:
        w, V = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    order = np.lexsort((w.imag, w.real))
    w = w[order]
    V = V[:, order]
    scale = np.linalg.norm(A)
    resid = np.linalg.norm(A @ V - V * w[None, :], axis=0)
    if scale > 0 and float(resid.max()) > 1e-8 * scale:
        raise ConvergenceFailure(
            f"eigenpair residual {resid.max():.3e} exceeds 1e-8*||A||"
        )
    W = None
    if left:
        try:
            W = np.linalg.inv(V).conj().T
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailure(f"defective eigenvector matrix: {exc}") from exc
    return EigenDecomposition(eigenvalues=w, right=V, left=W)


def frequency_response(A, B, C, omega: float) -> np.ndarray:
    """H(j omega) = C (j omega I - A)^-1 B.

    Raises SingularAtFrequency when j*omega lies within 1e-12 of an
    eigenvalue of A.
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    C = as_matrix(C, "C")
    n = A.shape[0]
    if A.shape[1] != n or B.shape[0] != n or C.shape[1] != n:
        raise DimensionMismatch(
            f"shapes A {A.shape}, B {B.shape}, C {C.shape} are inconsistent"
        )
    dist = np.abs(1j * omega - np.linalg.eigvals(A))
    if float(dist.min()) <= 1e-12:
        raise SingularAtFrequency(f"j*{omega} is an eigenvalue of A")
    return C @ np.linalg.solve(1j * omega * np.eye(n) - A, B)
