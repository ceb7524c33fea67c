"""Full-coordinate model construction: swing-equation networks, PSS state
augmentation, performance weights, and JSON model exchange.

State ordering convention (fixed across the package): the first N states
are rotor angles, followed by the remaining states r = [r_1; ...; r_N]
grouped per generator.  ``generator_state_map[i]`` lists the indices of
generator i's non-angle states *within r* (0-based); the first entry of
each list is that generator's frequency state.
"""

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadDimensions,
    DimensionMismatch,
    InvalidLaplacian,
    MissingFrequencyState,
    NonFiniteEntry,
    SchemaViolation,
)

log = logging.getLogger("oscdamp")

_LAPLACIAN_TOL = 1e-10
_SYMMETRY_TOL = 1e-10


@dataclass(frozen=True)
class SwingNetwork:
    """Generator inertias/dampings plus a Laplacian-like coupling matrix."""

    inertia: np.ndarray   # (N,) positive, s^2 pu
    damping: np.ndarray   # (N,) nonnegative, pu
    coupling: np.ndarray  # (N, N) symmetric, zero row sums, offdiag <= 0

    def __post_init__(self):
        M = np.asarray(self.inertia, dtype=float)
        D = np.asarray(self.damping, dtype=float)
        L = np.asarray(self.coupling, dtype=float)
        object.__setattr__(self, "inertia", M)
        object.__setattr__(self, "damping", D)
        object.__setattr__(self, "coupling", L)
        N = M.shape[0]
        if N < 1 or D.shape != (N,) or L.shape != (N, N):
            raise BadDimensions(f"inconsistent sizes: M {M.shape}, D {D.shape}, L {L.shape}")
        if not (np.all(np.isfinite(M)) and np.all(np.isfinite(D)) and np.all(np.isfinite(L))):
            raise NonFiniteEntry("swing network contains NaN/Inf")
        if np.any(M <= 0):
            raise BadDimensions("all inertias must be positive")
        if np.any(D < 0):
            raise BadDimensions("dampings must be nonnegative")
        scale = max(1.0, float(np.abs(L).max()))
        if np.abs(L - L.T).max() > _LAPLACIAN_TOL * scale:
            raise InvalidLaplacian("coupling matrix is not symmetric")
        if np.abs(L @ np.ones(N)).max() > _LAPLACIAN_TOL * scale:
            raise InvalidLaplacian("coupling matrix rows do not sum to zero")
        off = L - np.diag(np.diag(L))
        if off.max() > _LAPLACIAN_TOL * scale:
            raise InvalidLaplacian("coupling matrix has positive off-diagonal entries")

    @property
    def size(self) -> int:
        return self.inertia.shape[0]

    @classmethod
    def from_edges(cls, generators, edges) -> "SwingNetwork":
        """Build from per-generator {M, D} dicts and {i, j, b} edge dicts."""
        N = len(generators)
        M = np.array([g["M"] for g in generators], dtype=float)
        D = np.array([g["D"] for g in generators], dtype=float)
        L = np.zeros((N, N))
        for e in edges:
            i, j, b = int(e["i"]), int(e["j"]), float(e["b"])
            if not (0 <= i < N and 0 <= j < N) or i == j:
                raise SchemaViolation(f"edge ({i},{j}) out of range for N={N}")
            if b <= 0:
                raise SchemaViolation(f"edge ({i},{j}) has nonpositive susceptance")
            L[i, j] -= b
            L[j, i] -= b
        np.fill_diagonal(L, -L.sum(axis=1) + np.diag(L))
        return cls(inertia=M, damping=D, coupling=L)


@dataclass(frozen=True)
class PssParameters:
    """Washout + double lead-lag stabilizer parameters, per generator.

    Scalars broadcast over the equipped generators.  ``equipped`` lists
    generator indices carrying a PSS (default: all).
    """

    gain: float | np.ndarray = 3.0
    Tw: float | np.ndarray = 5.0
    Tn1: float | np.ndarray = 0.1
    Tn2: float | np.ndarray = 0.1
    Td1: float | np.ndarray = 0.01
    Td2: float | np.ndarray = 0.01
    equipped: tuple | None = None

    def __post_init__(self):
        for name in ("Tw", "Tn1", "Tn2", "Td1", "Td2"):
            if np.any(np.asarray(getattr(self, name)) <= 0):
                raise BadDimensions(f"PSS time constant {name} must be positive")

    def per_generator(self, gen: int, rank: int) -> tuple:
        """(k, Tw, Tn1, Tn2, Td1, Td2) for the rank-th equipped generator."""

        def pick(v):
            arr = np.atleast_1d(np.asarray(v, dtype=float))
            return float(arr[rank]) if arr.size > 1 else float(arr[0])

        return tuple(pick(v) for v in (self.gain, self.Tw, self.Tn1, self.Tn2, self.Td1, self.Td2))


@dataclass(frozen=True, eq=False)
class StateSpaceModel:
    """Linear model dx = A x + B1 d + B2 u with angle-block bookkeeping."""

    A: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    N: int
    generator_state_map: tuple
    labels: tuple = field(default_factory=tuple)
    inertia: np.ndarray | None = None

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B1 = np.asarray(self.B1, dtype=float)
        B2 = np.asarray(self.B2, dtype=float)
        for name, mat in (("A", A), ("B1", B1), ("B2", B2)):
            if not np.all(np.isfinite(mat)):
                raise NonFiniteEntry(f"{name} contains NaN/Inf")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B1", B1)
        object.__setattr__(self, "B2", B2)
        gsm = tuple(tuple(int(i) for i in idx) for idx in self.generator_state_map)
        object.__setattr__(self, "generator_state_map", gsm)
        n = A.shape[0]
        if A.shape[1] != n or B1.shape[0] != n or B2.shape[0] != n:
            raise DimensionMismatch(
                f"A {A.shape}, B1 {B1.shape}, B2 {B2.shape} are inconsistent"
            )
        if not (1 <= self.N <= n):
            raise BadDimensions(f"angle count N={self.N} out of range for n={n}")
        if len(gsm) != self.N:
            raise BadDimensions("generator_state_map must have one entry per generator")
        if self.inertia is not None:
            object.__setattr__(self, "inertia", np.asarray(self.inertia, dtype=float))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B2.shape[1]

    @property
    def p(self) -> int:
        return self.B1.shape[1]

    def frequency_state(self, gen: int) -> int:
        """Absolute index of generator ``gen``'s frequency state."""
        idx = self.generator_state_map[gen]
        if not idx:
            raise MissingFrequencyState(f"generator {gen} has no non-angle states")
        return self.N + idx[0]

    def symmetry_defect(self) -> float:
        """||A [1; 0]|| / ||A||: deviation from rotational symmetry."""
        v = np.zeros(self.n)
        v[: self.N] = 1.0
        scale = float(np.linalg.norm(self.A))
        return float(np.linalg.norm(self.A @ v)) / scale if scale else 0.0

    def is_symmetric(self, tol: float = _SYMMETRY_TOL) -> bool:
        return self.symmetry_defect() <= tol


@dataclass(frozen=True, eq=False)
class PerformanceWeights:
    """State/control weights Q, R and their principal square roots.

    Q puts the angle-misalignment projector on the angle block and half
    the inertia on frequency states; all other states are unweighted, so
    Qsqrt @ [1; 0] = 0 and the mean angle is invisible in the output.
    """

    Qtheta: np.ndarray
    Minertia: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    Qsqrt: np.ndarray
    Rsqrt: np.ndarray


def build_swing_model(net: SwingNetwork, input_map=None) -> StateSpaceModel:
    """Assemble x = [theta; theta_dot] dynamics from a swing network.

    A = [[0, I], [-M^-1 L, -M^-1 D]]; disturbances and controls both act
    through the inertia: B1 = B2 = [0; M^-1 P] with P the input pattern
    (identity by default, i.e. every generator actuated).
    """
    N = net.size
    Minv = 1.0 / net.inertia
    if input_map is None:
        P = np.eye(N)
    else:
        P = np.asarray(input_map, dtype=float)
        if P.ndim != 2 or P.shape[0] != N:
            raise DimensionMismatch(f"input_map must be (N, m), got {P.shape}")
    A = np.zeros((2 * N, 2 * N))
    A[:N, N:] = np.eye(N)
    A[N:, :N] = -Minv[:, None] * net.coupling
    A[N:, N:] = -np.diag(Minv * net.damping)
    B = np.vstack([np.zeros_like(P), Minv[:, None] * P])
    labels = tuple(f"theta_{i+1}" for i in range(N)) + tuple(f"omega_{i+1}" for i in range(N))
    return StateSpaceModel(
        A=A,
        B1=B.copy(),
        B2=B.copy(),
        N=N,
        generator_state_map=tuple((i,) for i in range(N)),
        labels=labels,
        inertia=net.inertia.copy(),
    )


def _pss_realization(k, Tw, Tn1, Tn2, Td1, Td2):
    """Controllable canonical (Ap, bp, cp, dp) of the PSS transfer function.

    k * (Tw s / (1 + Tw s)) * ((1 + Tn1 s)/(1 + Td1 s)) * ((1 + Tn2 s)/(1 + Td2 s))
    """
    den = np.polynomial.polynomial.polymul(
        np.polynomial.polynomial.polymul([1.0, Tw], [1.0, Td1]), [1.0, Td2]
    )  # c0 + c1 s + c2 s^2 + c3 s^3
    num = k * Tw * np.polynomial.polynomial.polymul(
        np.polynomial.polynomial.polymul([0.0, 1.0], [1.0, Tn1]), [1.0, Tn2]
    )
    a = den / den[3]
    b = num / den[3]
    dp = b[3]
    bt = b[:3] - dp * a[:3]
    Ap = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [-a[0], -a[1], -a[2]]])
    bp = np.array([0.0, 0.0, 1.0])
    return Ap, bp, bt, dp


def embed_pss(model: StateSpaceModel, pss: PssParameters) -> StateSpaceModel:
    """Append PSS dynamics driven by each equipped generator's frequency.

    The stabilizer torque enters the swing equation on the left-hand side
    (M dd_theta + D d_theta + L theta + u_pss = 0), so positive gain adds
    damping.  Rotational symmetry is preserved: the PSS sees frequencies,
    never absolute angles.
    """
    equipped = tuple(pss.equipped) if pss.equipped is not None else tuple(range(model.N))
    for g in equipped:
        if not (0 <= g < model.N):
            raise BadDimensions(f"equipped generator {g} out of range")
    n0 = model.n
    e = len(equipped)
    n = n0 + 3 * e
    Minv = 1.0 / model.inertia if model.inertia is not None else np.ones(model.N)
    A = np.zeros((n, n))
    A[:n0, :n0] = model.A
    gsm = [list(idx) for idx in model.generator_state_map]
    labels = list(model.labels) if model.labels else [f"x_{i+1}" for i in range(n0)]
    for rank, g in enumerate(equipped):
        freq = model.frequency_state(g)
        k, Tw, Tn1, Tn2, Td1, Td2 = pss.per_generator(g, rank)
        Ap, bp, cp, dp = _pss_realization(k, Tw, Tn1, Tn2, Td1, Td2)
        rows = slice(n0 + 3 * rank, n0 + 3 * rank + 3)
        A[rows, rows] = Ap
        A[rows, freq] = bp
        A[freq, rows] -= Minv[g] * cp
        A[freq, freq] -= Minv[g] * dp
        gsm[g].extend(range(n0 - model.N + 3 * rank, n0 - model.N + 3 * rank + 3))
        labels.extend(f"pss{j+1}_{g+1}" for j in range(3))
    B1 = np.vstack([model.B1, np.zeros((3 * e, model.p))]) if e else model.B1
    B2 = np.vstack([model.B2, np.zeros((3 * e, model.m))]) if e else model.B2
    return StateSpaceModel(
        A=A,
        B1=B1,
        B2=B2,
        N=model.N,
        generator_state_map=tuple(tuple(ix) for ix in gsm),
        labels=tuple(labels),
        inertia=model.inertia,
    )


def build_weights(model: StateSpaceModel, R_scale: float = 1.0) -> PerformanceWeights:
    """Angle-misalignment + kinetic-energy state weight, scaled identity R.

    x^T Q x = theta^T (I - (1/N) 1 1^T) theta + (1/2) sum_i M_i w_i^2; PSS
    and electrical states carry no weight.  Unknown inertia defaults to 1.
    """
    if R_scale <= 0:
        raise BadDimensions("R_scale must be positive")
    N, n, m = model.N, model.n, model.m
    M = model.inertia if model.inertia is not None else np.ones(N)
    Qtheta = np.eye(N) - np.ones((N, N)) / N
    Q = np.zeros((n, n))
    Q[:N, :N] = Qtheta
    Qsqrt = np.zeros((n, n))
    Qsqrt[:N, :N] = Qtheta  # projector: its principal square root is itself
    for g in range(N):
        f = model.frequency_state(g)
        Q[f, f] = M[g] / 2.0
        Qsqrt[f, f] = np.sqrt(M[g] / 2.0)
    R = R_scale * np.eye(m)
    Rsqrt = np.sqrt(R_scale) * np.eye(m)
    return PerformanceWeights(
        Qtheta=Qtheta, Minertia=np.asarray(M, dtype=float), Q=Q, R=R, Qsqrt=Qsqrt, Rsqrt=Rsqrt
    )


# ----------------------------------------------------------------------
# JSON exchange
# ----------------------------------------------------------------------

def _reject_constant(name):
    raise NonFiniteEntry(f"non-finite JSON constant {name!r}")


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"{path}: invalid JSON ({exc})") from exc


def _matrix_from_json(obj, name, rows=None, cols=None):
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise SchemaViolation(f"{name} must be a non-empty list of rows")
    width = len(obj[0])
    if any(len(r) != width for r in obj):
        raise SchemaViolation(f"{name} rows have unequal lengths")
    try:
        mat = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaViolation(f"{name} contains non-numeric entries") from exc
    if not np.all(np.isfinite(mat)):
        raise NonFiniteEntry(f"{name} contains NaN/Inf")
    if rows is not None and mat.shape[0] != rows:
        raise SchemaViolation(f"{name} has {mat.shape[0]} rows, expected {rows}")
    if cols is not None and mat.shape[1] != cols:
        raise SchemaViolation(f"{name} has {mat.shape[1]} cols, expected {cols}")
    return mat


def load_model(path) -> StateSpaceModel:
    """Read a state-space model JSON file (see README for the schema).

    Rotational symmetry is checked and logged as a warning when violated
    (imported linearizations may embed a slack bus); it is not an error.
    """
    data = _load_json(path)
    if not isinstance(data, dict):
        raise SchemaViolation(f"{path}: top-level JSON object expected")
    for key in ("n", "N", "m", "p", "A", "B1", "B2", "generator_state_map"):
        if key not in data:
            raise SchemaViolation(f"{path}: missing required key {key!r}")
    try:
        n, N, m, p = (int(data[k]) for k in ("n", "N", "m", "p"))
    except (TypeError, ValueError) as exc:
        raise SchemaViolation(f"{path}: n, N, m, p must be integers") from exc
    A = _matrix_from_json(data["A"], "A", n, n)
    B1 = _matrix_from_json(data["B1"], "B1", n, p)
    B2 = _matrix_from_json(data["B2"], "B2", n, m)
    gsm = data["generator_state_map"]
    if not isinstance(gsm, list) or len(gsm) != N:
        raise SchemaViolation(f"{path}: generator_state_map must list {N} index lists")
    labels = tuple(str(s) for s in data.get("labels", []))
    inertia = None
    if "inertia" in data:
        inertia = np.asarray(data["inertia"], dtype=float)
        if inertia.shape != (N,):
            raise SchemaViolation(f"{path}: inertia must have length N={N}")
    model = StateSpaceModel(
        A=A, B1=B1, B2=B2, N=N,
        generator_state_map=tuple(tuple(int(i) for i in idx) for idx in gsm),
        labels=labels, inertia=inertia,
    )
    if not model.is_symmetric():
        log.warning(
            "%s: A @ [1; 0] != 0 (defect %.2e); model breaks rotational symmetry",
            path, model.symmetry_defect(),
        )
    return model


def model_to_dict(model: StateSpaceModel) -> dict:
    doc = {
        "n": model.n,
        "N": model.N,
        "m": model.m,
        "p": model.p,
        "A": model.A.tolist(),
        "B1": model.B1.tolist(),
        "B2": model.B2.tolist(),
        "generator_state_map": [list(idx) for idx in model.generator_state_map],
        "labels": list(model.labels),
    }
    if model.inertia is not None:
        doc["inertia"] = model.inertia.tolist()
    return doc


def save_model(model: StateSpaceModel, path) -> None:
    """Write canonical JSON (sorted keys, fixed separators): load(save(m))
    then save again is byte-identical."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, sort_keys=True, indent=1, allow_nan=False)
        fh.write("\n")


def load_swing(path) -> tuple[SwingNetwork, PssParameters | None]:
    """Read a swing-network JSON file: generators, edges, optional pss."""
    data = _load_json(path)
    if not isinstance(data, dict) or "generators" not in data or "edges" not in data:
        raise SchemaViolation(f"{path}: need 'generators' and 'edges' keys")
    try:
        net = SwingNetwork.from_edges(data["generators"], data["edges"])
    except (KeyError, TypeError) as exc:
        raise SchemaViolation(f"{path}: malformed generator/edge entry ({exc})") from exc
    pss = None
    if data.get("pss") is not None:
        s = data["pss"]
        pss = PssParameters(
            gain=np.asarray(s.get("k", 3.0), dtype=float),
            Tw=np.asarray(s.get("Tw", 5.0), dtype=float),
            Tn1=np.asarray(s.get("Tn1", 0.1), dtype=float),
            Tn2=np.asarray(s.get("Tn2", 0.1), dtype=float),
            Td1=np.asarray(s.get("Td1", 0.01), dtype=float),
            Td2=np.asarray(s.get("Td2", 0.01), dtype=float),
            equipped=tuple(s["equipped"]) if "equipped" in s else None,
        )
    return net, pss
