"""Input-output and modal diagnostics.

Non-modal analysis treats the stochastically forced system as a map from
disturbance to performance output: the squared Hilbert-Schmidt norm of
H(jw) gives the power spectral density, its integral over frequency (the
squared H2 norm) the steady-state output variance, and the output
covariance eigenstructure the spatial shape of the energetic responses.
Modal diagnostics (damping table, participation factors) complement this
view.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import _kernels, lti
from .errors import DimensionMismatch, NotHurwitz
from .grid import StateSpaceModel
from .symmetry import ReducedModel


def default_grid(lo: float = 0.01, hi: float = 100.0, per_decade: int = 400) -> np.ndarray:
    """Log-spaced frequency grid, ``per_decade`` points per decade of range."""
    npts = max(2, int(math.ceil(per_decade * math.log10(hi / lo))))
    return np.logspace(math.log10(lo), math.log10(hi), npts)


@dataclass(frozen=True, eq=False)
class PsdCurve:
    """||H(jw)||_HS^2 sampled on a strictly increasing grid."""

    omegas: np.ndarray
    values: np.ndarray
    peaks: tuple  # (omega, value) local maxima

    def __post_init__(self):
        if np.any(np.diff(self.omegas) <= 0):
            raise DimensionMismatch("frequency grid must be strictly increasing")

    @property
    def dominant_peak(self) -> tuple | None:
        return max(self.peaks, key=lambda p: p[1]) if self.peaks else None


@dataclass(frozen=True, eq=False)
class VarianceReport:
    """Steady-state variance decomposition of the performance output.

    J = trace(Z1) + trace(Z2); Z1 rows/cols are indexed by physical output
    channels (angles first), so its diagonal splits per generator into
    angle-misalignment and kinetic-energy contributions.
    """

    J: float
    X: np.ndarray
    Z1: np.ndarray
    Z2: np.ndarray
    z1_eigenvalues: np.ndarray  # descending
    z1_eigenvectors: np.ndarray
    angle_contrib: np.ndarray
    freq_contrib: np.ndarray


@dataclass(frozen=True)
class ModalMode:
    eigenvalue: complex        # the +j member of the pair
    zeta: float
    freq_hz: float
    shape: np.ndarray          # angle components, largest entry 1+0j
    participation: np.ndarray  # per state, max-normalized


@dataclass(frozen=True, eq=False)
class ModalTable:
    modes: tuple  # ModalMode, ascending damping ratio
    threshold: float


def damping_ratio(eigenvalue: complex) -> float:
    """zeta = -Re(lambda) / |lambda| for an oscillatory mode."""
    mag = abs(eigenvalue)
    return -eigenvalue.real / mag if mag > 0 else 0.0


def frequency_hz(eigenvalue: complex) -> float:
    """f = Im(lambda) / (2 pi)."""
    return abs(eigenvalue.imag) / (2.0 * math.pi)


def _find_peaks(omegas: np.ndarray, values: np.ndarray) -> tuple:
    """Strict 3-point local maxima at least 1% of the global maximum."""
    floor = 0.01 * float(values.max(initial=0.0))
    peaks = []
    for k in range(1, len(values) - 1):
        if values[k] > values[k - 1] and values[k] > values[k + 1] and values[k] >= floor:
            peaks.append((float(omegas[k]), float(values[k])))
    return tuple(peaks)


def psd_response(A, B, C, omegas) -> PsdCurve:
    """PSD of C (jwI - A)^-1 B on a grid; A must be Hurwitz.

    Grid points are mutually independent; the jitted kernel may evaluate
    them in any order without changing the result.
    """
    A = np.asarray(A, dtype=float)
    if not lti.is_hurwitz(A):
        raise NotHurwitz("PSD requested for a non-Hurwitz system")
    omegas = np.asarray(omegas, dtype=float)
    vals = _kernels.psd_grid(
        np.ascontiguousarray(A, dtype=np.complex128),
        np.ascontiguousarray(B, dtype=np.complex128),
        np.ascontiguousarray(C, dtype=np.complex128),
        omegas,
    )
    return PsdCurve(omegas=omegas, values=vals, peaks=_find_peaks(omegas, vals))


def psd(reduced: ReducedModel, omegas=None, F=None) -> PsdCurve:
    """PSD of the (closed-loop) performance channel in reduced coordinates.

    The mean-angle random walk is unobservable from z, so the reduced
    computation is finite at every frequency even though the full system
    carries a zero eigenvalue.
    """
    if omegas is None:
        omegas = default_grid()
    if F is None:
        return psd_response(reduced.Abar, reduced.B1bar, reduced.Qsqrt_bar, omegas)
    C = np.vstack([reduced.Qsqrt_bar, -reduced.Rsqrt @ F])
    return psd_response(reduced.closed_loop(F), reduced.B1bar, C, omegas)


def h2_norm_sq(reduced: ReducedModel, F=None) -> VarianceReport:
    """Closed-loop variance J(F) = trace(X (Qbar + F^T R F)) via Lyapunov.

    X solves (Abar - B2bar F) X + X (.)^T + B1bar B1bar^T = 0.  Raises
    NotHurwitz when the closed loop is not stable.
    """
    if F is None:
        F = np.zeros((reduced.m, reduced.nr))
    F = np.asarray(F, dtype=float)
    if F.shape != (reduced.m, reduced.nr):
        raise DimensionMismatch(f"F must be {(reduced.m, reduced.nr)}, got {F.shape}")
    Acl = reduced.closed_loop(F)
    X = lti.solve_lyapunov(Acl, reduced.B1bar @ reduced.B1bar.T)
    J = float(np.trace(X @ (reduced.Qbar + F.T @ reduced.R @ F)))
    Z1 = reduced.Qsqrt_bar @ X @ reduced.Qsqrt_bar.T
    Z1 = (Z1 + Z1.T) / 2.0
    Z2 = reduced.Rsqrt @ F @ X @ F.T @ reduced.Rsqrt
    Z2 = (Z2 + Z2.T) / 2.0
    lam, Y = np.linalg.eigh(Z1)
    lam, Y = lam[::-1], Y[:, ::-1]
    model = reduced.model
    N = model.N
    diag = np.diag(Z1)
    freq_idx = [model.frequency_state(g) for g in range(N)]
    return VarianceReport(
        J=J,
        X=X,
        Z1=Z1,
        Z2=Z2,
        z1_eigenvalues=lam,
        z1_eigenvectors=Y,
        angle_contrib=diag[:N].copy(),
        freq_contrib=diag[freq_idx].copy(),
    )


def covariance_spectrum(report: VarianceReport, top_k: int | None = None):
    """Descending (lambda_i, y_i) pairs of Z1 with cumulative energy fractions."""
    lam = report.z1_eigenvalues
    total = float(lam.sum())
    k = len(lam) if top_k is None else min(top_k, len(lam))
    cum = np.cumsum(lam[:k]) / total if total > 0 else np.zeros(k)
    return [
        (float(lam[i]), report.z1_eigenvectors[:, i], float(cum[i])) for i in range(k)
    ]


def modal_table(model: StateSpaceModel, damping_threshold: float = 1.0) -> ModalTable:
    """Oscillatory modes with damping ratio below the threshold.

    Participation of state k in mode i is |V[k,i] * Vinv[i,k]|, scaled to
    max 1 per mode; mode shapes are the angle components of the right
    eigenvector, rotated/scaled so the largest one is exactly 1.
    """
    dec = lti.eig(model.A, left=True)
    V = dec.right
    Vinv = dec.left.conj().T  # rows biorthonormal to V columns
    modes = []
    for i, lam in enumerate(dec.eigenvalues):
        if lam.imag <= 1e-9:  # keep one member per conjugate pair
            continue
        zeta = damping_ratio(lam)
        if zeta >= damping_threshold:
            continue
        v = V[:, i]
        angle_part = v[: model.N]
        pivot = angle_part[np.argmax(np.abs(angle_part))]
        shape = angle_part / pivot if pivot != 0 else angle_part
        part = np.abs(V[:, i] * Vinv[i, :])
        pmax = part.max()
        modes.append(
            ModalMode(
                eigenvalue=complex(lam),
                zeta=zeta,
                freq_hz=frequency_hz(lam),
                shape=shape,
                participation=part / pmax if pmax > 0 else part,
            )
        )
    modes.sort(key=lambda mo: mo.zeta)
    return ModalTable(modes=tuple(modes), threshold=damping_threshold)


def simulate(Acl, x0, horizon: float, dt: float):
    """Exact LTI stepping x_{k+1} = expm(Acl dt) x_k up to the horizon.

    Returns (t, traj) with traj[k] the state at t[k]; exact at grid points.
    """
    if dt <= 0:
        raise DimensionMismatch("dt must be positive")
    Acl = np.asarray(Acl, dtype=float)
    x0 = np.asarray(x0, dtype=float).ravel()
    if x0.shape[0] != Acl.shape[0]:
        raise DimensionMismatch(f"x0 length {x0.shape[0]} != n {Acl.shape[0]}")
    nsteps = int(round(horizon / dt))
    E = expm(Acl * dt)
    traj = _kernels.propagate(np.ascontiguousarray(E), np.ascontiguousarray(x0), nsteps)
    return dt * np.arange(nsteps + 1), traj


def modal_initial_condition(model: StateSpaceModel, mode: ModalMode) -> np.ndarray:
    """Real part of the mode's full eigenvector, angle-pivot normalized."""
    dec = lti.eig(model.A)
    i = int(np.argmin(np.abs(dec.eigenvalues - mode.eigenvalue)))
    v = dec.right[:, i]
    angle_part = v[: model.N]
    pivot = angle_part[np.argmax(np.abs(angle_part))]
    if pivot != 0:
        v = v / pivot
    return v.real.copy()


def settling_time(t: np.ndarray, signals: np.ndarray, band: float = 0.02) -> float:
    """Earliest time after which every |signal| stays within band * peak."""
    peak = float(np.abs(signals).max())
    if peak == 0:
        return 0.0
    inside = np.all(np.abs(signals) <= band * peak, axis=1)
    for k in range(len(t) - 1, -1, -1):
        if not inside[k]:
            return float(t[min(k + 1, len(t) - 1)])
    return float(t[0])
