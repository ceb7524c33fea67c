"""Hot numeric kernels: numba-jitted with a pure-numpy reference path.

The jitted path is used when numba imports cleanly and the environment
variable ``OSC_PURE_NUMPY`` is not set to ``1``/``true``/``yes``.  Both
paths implement identical arithmetic; ``tests/test_kernels.py`` pins their
agreement and ``benchmarks/bench_kernels.py`` compares their speed.

Kernels here are the inner loops that dominate runtime: triangular
Lyapunov/Sylvester back-substitution (called once per gradient evaluation
inside the ADMM F-step), frequency-grid sweeps (PSD and return-difference
minimum singular value), and trajectory propagation.
"""

import os

import numpy as np
from scipy.linalg import solve_triangular


def _numba_enabled() -> bool:
    flag = os.environ.get("OSC_PURE_NUMPY", "").strip().lower()
    if flag in ("1", "true", "yes"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


HAVE_NUMBA = _numba_enabled()


def backend() -> str:
    """Name of the active kernel path: ``"numba"`` or ``"numpy"``."""
    return "numba" if HAVE_NUMBA else "numpy"


# ----------------------------------------------------------------------
# Reference (pure numpy/scipy) implementations
# ----------------------------------------------------------------------

def tri_lyapunov_np(T, C):
    """Solve T Y + Y T^H = C with T complex upper triangular.

    Columns are resolved last-to-first; each step is one triangular solve
    with the shifted matrix T + conj(T[k,k]) I.  Caller guarantees
    T[i,i] + conj(T[k,k]) != 0 (holds whenever T is Hurwitz).
    """
    n = T.shape[0]
    Y = np.zeros((n, n), dtype=np.complex128)
    eye = np.eye(n)
    for k in range(n - 1, -1, -1):
        rhs = C[:, k] - Y[:, k + 1:] @ np.conj(T[k, k + 1:])
        Y[:, k] = solve_triangular(T + np.conj(T[k, k]) * eye, rhs)
    return Y


def tri_lyapunov_dual_np(T, C):
    """Solve T^H Z + Z T = C with T complex upper triangular.

    Dual orientation of :func:`tri_lyapunov_np` (observability-type
    equations); shares one Schur factorization with the primal solve.
    """
    n = T.shape[0]
    Z = np.zeros((n, n), dtype=np.complex128)
    eye = np.eye(n)
    Th = T.conj().T
    for k in range(n):
        rhs = C[:, k] - Z[:, :k] @ T[:k, k]
        Z[:, k] = solve_triangular(Th + T[k, k] * eye, rhs, lower=True)
    return Z


def tri_sylvester_np(T1, T2, C):
    """Solve T1 Y + Y T2 = C with T1, T2 complex upper triangular.

    Columns first-to-last; caller guarantees T1[i,i] + T2[k,k] != 0.
    """
    p, q = T1.shape[0], T2.shape[0]
    Y = np.zeros((p, q), dtype=np.complex128)
    eye = np.eye(p)
    for k in range(q):
        rhs = C[:, k] - Y[:, :k] @ T2[:k, k]
        Y[:, k] = solve_triangular(T1 + T2[k, k] * eye, rhs)
    return Y


def psd_grid_np(Ac, Bc, Cc, omegas):
    """Squared Hilbert-Schmidt norm of C (jw I - A)^-1 B on a frequency grid.

    Inputs must be complex128; returns a float array aligned with omegas.
    Each grid point is independent (order never affects the result).
    """
    n = Ac.shape[0]
    eye = np.eye(n)
    out = np.empty(omegas.shape[0])
    for w in range(omegas.shape[0]):
        H = Cc @ np.linalg.solve(1j * omegas[w] * eye - Ac, Bc)
        out[w] = np.sum(H.real ** 2 + H.imag ** 2)
    return out


def margin_grid_np(Ac, Bc, Fc, omegas):
    """sigma_min(I + F (jw I - A)^-1 B) on a frequency grid (complex inputs)."""
    n = Ac.shape[0]
    m = Fc.shape[0]
    eye_n = np.eye(n)
    eye_m = np.eye(m)
    out = np.empty(omegas.shape[0])
    for w in range(omegas.shape[0]):
        L = Fc @ np.linalg.solve(1j * omegas[w] * eye_n - Ac, Bc)
        out[w] = np.linalg.svd(eye_m + L, compute_uv=False)[-1]
    return out


def propagate_np(E, x0, nsteps):
    """Iterate x_{k+1} = E x_k for nsteps steps; returns (nsteps+1, n)."""
    out = np.empty((nsteps + 1, x0.shape[0]))
    out[0] = x0
    for k in range(nsteps):
        out[k + 1] = E @ out[k]
    return out


# ----------------------------------------------------------------------
# Numba path
# ----------------------------------------------------------------------

if HAVE_NUMBA:
    from numba import njit, prange

    @njit(cache=True)
    def _tri_lyapunov_nb(T, C):
        n = T.shape[0]
        Y = np.zeros((n, n), dtype=np.complex128)
        for k in range(n - 1, -1, -1):
            rhs = C[:, k].copy()
            for j in range(k + 1, n):
                tkj = np.conj(T[k, j])
                for i in range(n):
                    rhs[i] -= tkj * Y[i, j]
            shift = np.conj(T[k, k])
            for i in range(n - 1, -1, -1):
                s = rhs[i]
                for j in range(i + 1, n):
                    s -= T[i, j] * Y[j, k]
                Y[i, k] = s / (T[i, i] + shift)
        return Y

    @njit(cache=True)
    def _tri_lyapunov_dual_nb(T, C):
        n = T.shape[0]
        Z = np.zeros((n, n), dtype=np.complex128)
        for k in range(n):
            rhs = C[:, k].copy()
            for j in range(k):
                tjk = T[j, k]
                for i in range(n):
                    rhs[i] -= tjk * Z[i, j]
            shift = T[k, k]
            for i in range(n):
                s = rhs[i]
                for j in range(i):
                    s -= np.conj(T[j, i]) * Z[j, k]
                Z[i, k] = s / (np.conj(T[i, i]) + shift)
        return Z

    @njit(cache=True)
    def _tri_sylvester_nb(T1, T2, C):
        p = T1.shape[0]
        q = T2.shape[0]
        Y = np.zeros((p, q), dtype=np.complex128)
        for k in range(q):
            rhs = C[:, k].copy()
            for j in range(k):
                t2jk = T2[j, k]
                for i in range(p):
                    rhs[i] -= t2jk * Y[i, j]
            shift = T2[k, k]
            for i in range(p - 1, -1, -1):
                s = rhs[i]
                for j in range(i + 1, p):
                    s -= T1[i, j] * Y[j, k]
                Y[i, k] = s / (T1[i, i] + shift)
        return Y

    @njit(parallel=True, cache=True)
    def _psd_grid_nb(Ac, Bc, Cc, omegas):
        n = Ac.shape[0]
        nw = omegas.shape[0]
        out = np.empty(nw)
        for w in prange(nw):
            M = -Ac.copy()
            jw = 1j * omegas[w]
            for i in range(n):
                M[i, i] += jw
            H = Cc @ np.linalg.solve(M, Bc)
            acc = 0.0
            for i in range(H.shape[0]):
                for j in range(H.shape[1]):
                    acc += H[i, j].real ** 2 + H[i, j].imag ** 2
            out[w] = acc
        return out

    @njit(parallel=True, cache=True)
    def _margin_grid_nb(Ac, Bc, Fc, omegas):
        n = Ac.shape[0]
        m = Fc.shape[0]
        nw = omegas.shape[0]
        out = np.empty(nw)
        for w in prange(nw):
            M = -Ac.copy()
            jw = 1j * omegas[w]
            for i in range(n):
                M[i, i] += jw
            L = Fc @ np.linalg.solve(M, Bc)
            for i in range(m):
                L[i, i] += 1.0
            out[w] = np.linalg.svd(L)[1][-1]
        return out

    @njit(cache=True)
    def _propagate_nb(E, x0, nsteps):
        out = np.empty((nsteps + 1, x0.shape[0]))
        out[0] = x0
        for k in range(nsteps):
            out[k + 1] = E @ out[k]
        return out

    tri_lyapunov = _tri_lyapunov_nb
    tri_lyapunov_dual = _tri_lyapunov_dual_nb
    tri_sylvester = _tri_sylvester_nb
    psd_grid = _psd_grid_nb
    margin_grid = _margin_grid_nb
    propagate = _propagate_nb
else:
    tri_lyapunov = tri_lyapunov_np
    tri_lyapunov_dual = tri_lyapunov_dual_np
    tri_sylvester = tri_sylvester_np
    psd_grid = psd_grid_np
    margin_grid = margin_grid_np
    propagate = propagate_np


def warmup():
    """Trigger JIT compilation on tiny inputs (no-op on the numpy path)."""
    T = np.array([[-1.0 + 0j, 0.5], [0.0, -2.0 + 1j]])
    C = np.eye(2, dtype=np.complex128)
    tri_lyapunov(T, C)
    tri_lyapunov_dual(T, C)
    tri_sylvester(T, T, C)
    grid = np.array([0.5, 1.0])
    psd_grid(T, C, C, grid)
    margin_grid(T, C, C, grid)
    propagate(np.eye(2) * 0.5, np.ones(2), 3)


def set_threads(jobs: int) -> None:
    """Limit kernel parallelism (numba threading layer); no-op otherwise."""
    if HAVE_NUMBA and jobs > 0:
        import numba

        numba.set_num_threads(min(jobs, numba.config.NUMBA_NUM_THREADS))
