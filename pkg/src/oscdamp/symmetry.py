"""Elimination of the marginal mean-angle mode.

A uniform rotation of all rotor angles leaves the dynamics unchanged, so
A has a zero eigenvalue along [1; 0].  U spans the orthogonal complement
of 1 in angle space, T = blkdiag(U, I) maps the model to reduced
coordinates xi = T^T x, and feedback gains convert via F = K T and
K = F T^T.  Every gain produced in reduced coordinates automatically
ignores the absolute mean angle.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadDimensions, DimensionMismatch, NotRelativeGain, SymmetryViolated
from .grid import PerformanceWeights, StateSpaceModel
from .lti import is_hurwitz

_ORTHO_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SymmetryTransform:
    """U: N x (N-1) orthonormal complement of 1; T = blkdiag(U, I_{n-N})."""

    U: np.ndarray
    T: np.ndarray

    @property
    def N(self) -> int:
        return self.U.shape[0]

    @property
    def n(self) -> int:
        return self.T.shape[0]


@dataclass(frozen=True, eq=False)
class ReducedModel:
    """Reduced-coordinate model (Abar, B1bar, B2bar) with output data.

    Qsqrt_bar = Qsqrt @ T keeps its n output rows, so covariances of the
    performance output stay indexed by physical states.  R (and its root)
    ride along for the H2 objective; ``model`` is the source full model.
    """

    Abar: np.ndarray
    B1bar: np.ndarray
    B2bar: np.ndarray
    Qsqrt_bar: np.ndarray
    Qbar: np.ndarray
    R: np.ndarray
    Rsqrt: np.ndarray
    transform: SymmetryTransform
    model: StateSpaceModel

    @property
    def nr(self) -> int:
        return self.Abar.shape[0]

    @property
    def m(self) -> int:
        return self.B2bar.shape[1]

    def closed_loop(self, F: np.ndarray) -> np.ndarray:
        return self.Abar - self.B2bar @ F

    def is_hurwitz(self, F=None) -> bool:
        return is_hurwitz(self.Abar if F is None else self.closed_loop(F))


def build_transform(N: int, n: int) -> SymmetryTransform:
    """Deterministic orthonormal basis of the angle-difference subspace.

    U comes from the QR factorization of the complement of 1, with each
    column sign-fixed so its first nonzero entry is positive; any
    orthonormal complement works, this one is reproducible.
    """
    if not (2 <= N <= n):
        raise BadDimensions(f"need 2 <= N <= n, got N={N}, n={n}")
    ones = np.ones((N, 1)) / np.sqrt(N)
    Qfull, _ = np.linalg.qr(np.hstack([ones, np.eye(N)]), mode="reduced")
    U = Qfull[:, 1:N].copy()
    # sign-normalize for determinism
    for j in range(U.shape[1]):
        col = U[:, j]
        lead = col[np.nonzero(np.abs(col) > 1e-12)[0][0]]
        if lead < 0:
            U[:, j] = -col
    T = np.zeros((n, n - 1))
    T[:N, : N - 1] = U
    T[N:, N - 1:] = np.eye(n - N)
    tf = SymmetryTransform(U=U, T=T)
    assert np.abs(U.T @ U - np.eye(N - 1)).max() < _ORTHO_TOL
    assert np.abs(U.T @ np.ones(N)).max() < _ORTHO_TOL
    return tf


def reduce_model(
    model: StateSpaceModel, weights: PerformanceWeights, tf: SymmetryTransform
) -> ReducedModel:
    """Project the model onto mean-angle-free coordinates.

    Abar = T^T A T, Bbar_i = T^T B_i, Qsqrt_bar = Qsqrt T.  The spectrum
    of Abar equals the spectrum of A minus one zero eigenvalue.
    """
    if tf.N != model.N or tf.n != model.n:
        raise DimensionMismatch(
            f"transform sized for (N={tf.N}, n={tf.n}) but model has (N={model.N}, n={model.n})"
        )
    if not model.is_symmetric():
        raise SymmetryViolated(
            f"A @ [1; 0] defect {model.symmetry_defect():.2e} exceeds 1e-10; "
            "reduction would misrepresent the dynamics"
        )
    T = tf.T
    Abar = T.T @ model.A @ T
    Qsqrt_bar = weights.Qsqrt @ T
    return ReducedModel(
        Abar=Abar,
        B1bar=T.T @ model.B1,
        B2bar=T.T @ model.B2,
        Qsqrt_bar=Qsqrt_bar,
        Qbar=Qsqrt_bar.T @ Qsqrt_bar,
        R=weights.R,
        Rsqrt=weights.Rsqrt,
        transform=tf,
        model=model,
    )


def gain_to_physical(F: np.ndarray, tf: SymmetryTransform) -> np.ndarray:
    """K = F T^T; K @ [1; 0] = 0 holds by construction."""
    F = np.asarray(F, dtype=float)
    if F.shape[1] != tf.n - 1:
        raise DimensionMismatch(f"F has {F.shape[1]} columns, expected {tf.n - 1}")
    return F @ tf.T.T


def gain_to_reduced(K: np.ndarray, tf: SymmetryTransform) -> np.ndarray:
    """F = K T, after checking K never reacts to the mean angle."""
    K = np.asarray(K, dtype=float)
    if K.shape[1] != tf.n:
        raise DimensionMismatch(f"K has {K.shape[1]} columns, expected {tf.n}")
    v = np.zeros(tf.n)
    v[: tf.N] = 1.0
    scale = float(np.linalg.norm(K))
    if scale > 0 and float(np.linalg.norm(K @ v)) > 1e-8 * scale:
        raise NotRelativeGain(
            f"K @ [1; 0] norm {np.linalg.norm(K @ v):.2e} exceeds 1e-8*||K||"
        )
    return K @ tf.T
