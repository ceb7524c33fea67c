"""Sparsity-promoting H2 synthesis.

Solves  minimize J(F) + gamma * g(K)  subject to  F T^T = K  by ADMM:
the F-step descends the smooth part (H2 cost plus the quadratic coupling)
under a Hurwitz-preserving Armijo line search, the K-step applies the
proximal operator of the chosen penalty, and the dual update enforces
consensus.  Weighted penalties are reweighted iteratively from the
current gain, and the identified structure is polished by projected
gradient on the structured H2 problem.

Penalty kinds
-------------
``elementwise``  weighted l1 on every entry of K.
``block-gr1``    weighted l1 on inter-generator entries of K_r only.
``block-gr2``    group norm per (row, other-generator) slice of K_r.
``block-gr3``    group norm per whole penalized row of K_r.

Block penalties never touch the block-diagonal of K_r (each controller
keeps free access to its own generator's states); the angle block always
carries the weighted l1 penalty.
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import solve_continuous_are

from . import lti
from .errors import (
    DimensionMismatch,
    NotHurwitz,
    NotRelativeGain,
    NotStabilizable,
    RiccatiFailure,
    StabilizationLost,
    StructureNotStabilizing,
)
from .symmetry import ReducedModel, SymmetryTransform

log = logging.getLogger("oscdamp")


# ----------------------------------------------------------------------
# Gains
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FeedbackGain:
    """Physical gain K = [K_theta | K_r] with its reduced twin F = K T."""

    K: np.ndarray
    F: np.ndarray
    N: int
    zero_tol: float = 0.0

    def __post_init__(self):
        K = np.asarray(self.K, dtype=float)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "F", np.asarray(self.F, dtype=float))
        scale = float(np.linalg.norm(K))
        if scale > 0:
            v = np.zeros(K.shape[1])
            v[: self.N] = 1.0
            defect = float(np.linalg.norm(K @ v))
            if defect > 1e-10 * scale:
                raise NotRelativeGain(
                    f"K @ [1; 0] norm {defect:.2e} exceeds 1e-10 * ||K||"
                )

    @property
    def K_theta(self) -> np.ndarray:
        return self.K[:, : self.N]

    @property
    def K_r(self) -> np.ndarray:
        return self.K[:, self.N:]

    @property
    def pattern(self) -> np.ndarray:
        return np.abs(self.K) > self.zero_tol

    @property
    def card(self) -> int:
        return int(np.count_nonzero(self.pattern))

    @classmethod
    def from_F(cls, F, tf: SymmetryTransform, zero_tol: float = 0.0) -> "FeedbackGain":
        F = np.asarray(F, dtype=float)
        return cls(K=F @ tf.T.T, F=F, N=tf.N, zero_tol=zero_tol)

    @classmethod
    def from_K(cls, K, tf: SymmetryTransform, zero_tol: float = 0.0) -> "FeedbackGain":
        K = np.asarray(K, dtype=float)
        return cls(K=K, F=K @ tf.T, N=tf.N, zero_tol=zero_tol)


def card_of(K: np.ndarray, zero_tol: float) -> int:
    return int(np.count_nonzero(np.abs(K) > zero_tol))


def project_relative(K: np.ndarray, N: int, mask=None) -> np.ndarray:
    """Project K onto {masked entries zero} ∩ {angle rows sum to zero}.

    The two constraint sets act on disjoint coordinates, so zeroing the
    masked entries and recentering the free angle entries per row is the
    exact orthogonal projection.
    """
    K = np.array(K, dtype=float)
    if mask is not None:
        K[~mask] = 0.0
        free = mask[:, :N]
    else:
        free = np.ones(K[:, :N].shape, dtype=bool)
    for i in range(K.shape[0]):
        f = free[i]
        cnt = int(f.sum())
        if cnt:
            K[i, :N][f] -= K[i, :N][f].sum() / cnt
    return K


# ----------------------------------------------------------------------
# Penalties
# ----------------------------------------------------------------------

ELEMENTWISE = "elementwise"
BLOCK_KINDS = ("block-gr1", "block-gr2", "block-gr3")


@dataclass(frozen=True, eq=False)
class PenaltySpec:
    """Penalty structure, weights, and group scalings.

    ``structural_mask`` is the m x (n-N) indicator of penalized K_r
    entries (ones off the own-generator blocks); ``group_cols`` maps each
    generator to its column slice of K_r.  ``beta`` carries the group
    cardinality scalings: the penalized-entry count of each group, i.e.
    eq-style card() evaluated on a structurally dense gain.
    """

    kind: str
    gamma_theta: float
    gamma_r: float
    N: int
    m: int
    n: int
    actuators: tuple
    structural_mask: np.ndarray          # bool (m, n-N)
    group_cols: tuple                    # per generator: column indices in K_r
    W_full: np.ndarray | None = None     # elementwise: (m, n)
    W_theta: np.ndarray | None = None    # block: (m, N)
    W_r: np.ndarray | None = None        # gr1: (m, n-N); gr2: (m, N); gr3: (m,)
    beta: np.ndarray | None = None       # gr2: (m, N); gr3: (m,)

    @property
    def gamma(self) -> float:
        return self.gamma_theta

    def penalty_value(self, K: np.ndarray) -> float:
        """g(K) (block variants: gamma-weighted sum of both terms, so the
        reported objective is J + value)."""
        if self.kind == ELEMENTWISE:
            return self.gamma_theta * float(np.sum(self.W_full * np.abs(K)))
        Kt, Kr = K[:, : self.N], K[:, self.N:]
        val = self.gamma_theta * float(np.sum(self.W_theta * np.abs(Kt)))
        if self.kind == "block-gr1":
            val += self.gamma_r * float(
                np.sum(self.W_r * np.abs(Kr) * self.structural_mask)
            )
        elif self.kind == "block-gr2":
            for i in range(self.m):
                for k in range(self.N):
                    if k == self.actuators[i] or not len(self.group_cols[k]):
                        continue
                    g = Kr[i, self.group_cols[k]]
                    val += self.gamma_r * self.beta[i, k] * self.W_r[i, k] * float(
                        np.linalg.norm(g)
                    )
        else:  # gr3
            for i in range(self.m):
                cols = np.nonzero(self.structural_mask[i])[0]
                if len(cols):
                    val += self.gamma_r * self.beta[i] * self.W_r[i] * float(
                        np.linalg.norm(Kr[i, cols])
                    )
        return val


def _structure(model_like, actuators=None):
    """(structural_mask, group_cols, actuators) from a model's state map."""
    model = model_like
    N, m, n = model.N, model.m, model.n
    if actuators is None:
        if m > N:
            raise DimensionMismatch(
                f"m={m} > N={N}: pass an explicit actuator->generator map"
            )
        actuators = tuple(range(m))
    gsm = model.generator_state_map
    mask = np.ones((m, n - N), dtype=bool)
    for i, g in enumerate(actuators):
        mask[i, list(gsm[g])] = False
    group_cols = tuple(np.array(gsm[k], dtype=int) for k in range(N))
    return mask, group_cols, tuple(actuators)


def make_penalty(
    kind: str,
    model,
    gamma: float,
    gamma_r: float | None = None,
    actuators=None,
) -> PenaltySpec:
    """Unit-weight penalty spec for a model (weights evolve by reweighting).

    ``gamma_r`` defaults to ``gamma`` (single knob for both blocks).
    """
    if kind not in (ELEMENTWISE,) + BLOCK_KINDS:
        raise DimensionMismatch(f"unknown penalty kind {kind!r}")
    if gamma < 0 or (gamma_r is not None and gamma_r < 0):
        raise DimensionMismatch("penalty gammas must be nonnegative")
    mask, group_cols, actuators = _structure(model, actuators)
    N, m, n = model.N, model.m, model.n
    gr = gamma if gamma_r is None else gamma_r
    spec = PenaltySpec(
        kind=kind,
        gamma_theta=gamma,
        gamma_r=gr,
        N=N,
        m=m,
        n=n,
        actuators=actuators,
        structural_mask=mask,
        group_cols=group_cols,
    )
    if kind == ELEMENTWISE:
        return replace(spec, W_full=np.ones((m, n)))
    W_theta = np.ones((m, N))
    if kind == "block-gr1":
        return replace(spec, W_theta=W_theta, W_r=np.ones((m, n - N)))
    if kind == "block-gr2":
        beta = np.zeros((m, N))
        for i in range(m):
            for k in range(N):
                if k != actuators[i]:
                    beta[i, k] = len(group_cols[k])
        return replace(spec, W_theta=W_theta, W_r=np.ones((m, N)), beta=beta)
    beta = mask.sum(axis=1).astype(float)
    return replace(spec, W_theta=W_theta, W_r=np.ones(m), beta=beta)


def prox_elementwise(V: np.ndarray, tau: float, W: np.ndarray) -> np.ndarray:
    """Soft threshold: argmin_k tau*W|k| + (1/2)(k - v)^2, entrywise.

    Entries with W = 0 pass through; exact-threshold ties map to zero.
    """
    if tau < 0:
        raise DimensionMismatch("tau must be nonnegative")
    return np.sign(V) * np.maximum(np.abs(V) - tau * W, 0.0)


def prox_group(V: np.ndarray, tau: float, spec: PenaltySpec) -> np.ndarray:
    """Group shrinkage on the K_r-shaped matrix V per the spec's groups.

    Each group g shrinks by max(1 - tau*w_g/||V_g||, 0) with
    w_g = beta_g * W_g; entries off the structural mask pass through.
    """
    if spec.kind not in ("block-gr2", "block-gr3"):
        raise DimensionMismatch(f"prox_group needs a group penalty, got {spec.kind!r}")
    out = np.array(V, dtype=float)
    if spec.kind == "block-gr2":
        for i in range(spec.m):
            for k in range(spec.N):
                if k == spec.actuators[i] or not len(spec.group_cols[k]):
                    continue
                cols = spec.group_cols[k]
                g = out[i, cols]
                nrm = float(np.linalg.norm(g))
                w = tau * spec.beta[i, k] * spec.W_r[i, k]
                out[i, cols] = g * max(1.0 - w / nrm, 0.0) if nrm > 0 else 0.0
    else:
        for i in range(spec.m):
            cols = np.nonzero(spec.structural_mask[i])[0]
            if not len(cols):
                continue
            g = out[i, cols]
            nrm = float(np.linalg.norm(g))
            w = tau * spec.beta[i] * spec.W_r[i]
            out[i, cols] = g * max(1.0 - w / nrm, 0.0) if nrm > 0 else 0.0
    return out


def apply_prox(V: np.ndarray, spec: PenaltySpec, rho: float) -> np.ndarray:
    """K-step: proximal operator of (1/rho) * penalty at V (full K shape)."""
    if spec.kind == ELEMENTWISE:
        return prox_elementwise(V, spec.gamma_theta / rho, spec.W_full)
    N = spec.N
    out = np.array(V, dtype=float)
    out[:, :N] = prox_elementwise(V[:, :N], spec.gamma_theta / rho, spec.W_theta)
    if spec.kind == "block-gr1":
        shrunk = prox_elementwise(V[:, N:], spec.gamma_r / rho, spec.W_r)
        out[:, N:] = np.where(spec.structural_mask, shrunk, V[:, N:])
    else:
        out[:, N:] = prox_group(V[:, N:], spec.gamma_r / rho, spec)
    return out


def reweight(K: np.ndarray, spec: PenaltySpec, eps: float) -> PenaltySpec:
    """Inverse-magnitude weight update from the current gain.

    W <- 1/(|K| + eps) entrywise, or 1/(||K_g|| + eps) per group.  Group
    cardinality scalings stay at the structural group sizes (a dead
    group's count would otherwise zero its own penalty and revive it).
    """
    if eps <= 0:
        raise DimensionMismatch("reweight eps must be positive")
    K = np.asarray(K, dtype=float)
    if spec.kind == ELEMENTWISE:
        return replace(spec, W_full=1.0 / (np.abs(K) + eps))
    N = spec.N
    Kr = K[:, N:]
    W_theta = 1.0 / (np.abs(K[:, :N]) + eps)
    if spec.kind == "block-gr1":
        return replace(spec, W_theta=W_theta, W_r=1.0 / (np.abs(Kr) + eps))
    if spec.kind == "block-gr2":
        W_r = np.array(spec.W_r, dtype=float)
        for i in range(spec.m):
            for k in range(spec.N):
                if k == spec.actuators[i] or not len(spec.group_cols[k]):
                    continue
                W_r[i, k] = 1.0 / (np.linalg.norm(Kr[i, spec.group_cols[k]]) + eps)
        return replace(spec, W_theta=W_theta, W_r=W_r)
    W_r = np.array(spec.W_r, dtype=float)
    for i in range(spec.m):
        cols = np.nonzero(spec.structural_mask[i])[0]
        if len(cols):
            W_r[i] = 1.0 / (np.linalg.norm(Kr[i, cols]) + eps)
    return replace(spec, W_theta=W_theta, W_r=W_r)


# ----------------------------------------------------------------------
# H2 machinery
# ----------------------------------------------------------------------

def centralized_h2(reduced: ReducedModel) -> FeedbackGain:
    """Optimal unstructured gain from the reduced Riccati equation.

    F = R^-1 B2bar^T P with P the stabilizing solution; K = F T^T.
    """
    A, B2 = reduced.Abar, reduced.B2bar
    _check_stabilizable(A, B2)
    try:
        P = solve_continuous_are(A, B2, reduced.Qbar, reduced.R)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise RiccatiFailure(f"Riccati solve failed: {exc}") from exc
    F = np.linalg.solve(reduced.R, B2.T @ P)
    if not reduced.is_hurwitz(F):
        raise RiccatiFailure("Riccati gain failed the closed-loop Hurwitz check")
    return FeedbackGain.from_F(F, reduced.transform)


def _check_stabilizable(A, B) -> None:
    n = A.shape[0]
    w = np.linalg.eigvals(A)
    for lam in w[w.real >= lti.HURWITZ_TOL]:
        pbh = np.hstack([A - lam * np.eye(n), B.astype(complex)])
        if np.linalg.matrix_rank(pbh, tol=1e-9 * max(1.0, float(np.abs(A).max()))) < n:
            raise NotStabilizable(f"uncontrollable unstable mode at {lam:.4g}")


def h2_cost(reduced: ReducedModel, F: np.ndarray) -> float:
    """J(F) = trace(X (Qbar + F^T R F)); raises NotHurwitz when unstable."""
    X = lti.solve_lyapunov(reduced.closed_loop(F), reduced.B1bar @ reduced.B1bar.T)
    return float(np.trace(X @ (reduced.Qbar + F.T @ reduced.R @ F)))


def _h2_grad_cost(reduced: ReducedModel, F: np.ndarray):
    F = np.asarray(F, dtype=float)
    Acl = reduced.closed_loop(F)
    Wo = reduced.Qbar + F.T @ reduced.R @ F
    X, P = lti.gramians(Acl, reduced.B1bar @ reduced.B1bar.T, Wo)
    grad = 2.0 * (reduced.R @ F - reduced.B2bar.T @ P) @ X
    return grad, float(np.trace(X @ Wo))


def h2_gradient(reduced: ReducedModel, F: np.ndarray) -> np.ndarray:
    """Gradient 2 (R F - B2bar^T P) X of the H2 cost at a stabilizing F.

    X and P are the closed-loop controllability/observability solutions,
    obtained from a single Schur factorization.
    """
    return _h2_grad_cost(reduced, F)[0]


# ----------------------------------------------------------------------
# ADMM
# ----------------------------------------------------------------------

@dataclass
class AdmmOptions:
    """Solver knobs; defaults follow standard ADMM practice."""

    rho: float = 100.0
    eps_abs: float = 1e-4
    eps_rel: float = 1e-3
    max_iter: int = 1000
    inner_tol: float = 1e-6
    inner_max: int = 500
    reweight_rounds: int = 5
    reweight_eps: float | None = None   # default 1e-3 * max|K_centralized|
    rho_ratio: float = 10.0
    rho_factor: float = 2.0
    rho_min: float = 1e-3
    rho_max: float = 1e8
    armijo_c: float = 1e-4
    armijo_shrink: float = 0.5
    zero_tol_factor: float = 1e-6


@dataclass
class AdmmReport:
    """Residual/objective history and termination data of one design."""

    primal: np.ndarray
    dual: np.ndarray
    J: np.ndarray
    penalty: np.ndarray
    rho: np.ndarray
    status: str
    rounds: int
    round_cards: list = field(default_factory=list)
    J_final: float = float("nan")
    card_final: int = 0
    optimality: float = float("nan")


def _fstep(reduced, F, M, rho, opts, step0: float = 1.0):
    """Minimize J(F) + (rho/2)||F T^T - M||_F^2 by Armijo gradient descent.

    T^T T = I makes the quadratic gradient rho (F - M T); every accepted
    step keeps the closed loop Hurwitz.  Returns (F, J, last_step) so the
    caller can seed the next line search.
    """
    T = reduced.transform.T
    MT = M @ T

    def quad(Fv):
        return 0.5 * rho * float(np.sum((Fv @ T.T - M) ** 2))

    grad, J = _h2_grad_cost(reduced, F)
    phi = J + quad(F)
    step = min(max(step0, 1e-12), 1.0)
    for _ in range(opts.inner_max):
        g = grad + rho * (F - MT)
        gnorm = float(np.linalg.norm(g))
        if gnorm <= opts.inner_tol:
            break
        # decrease below float64 resolution of phi cannot be certified
        if opts.armijo_c * step * gnorm**2 <= 1e-14 * max(1.0, abs(phi)):
            break
        accepted = False
        while step > 1e-16:
            Ftry = F - step * g
            try:
                Jtry = h2_cost(reduced, Ftry)
            except NotHurwitz:
                step *= opts.armijo_shrink
                continue
            phitry = Jtry + quad(Ftry)
            if phitry <= phi - opts.armijo_c * step * gnorm**2:
                F, J, phi = Ftry, Jtry, phitry
                accepted = True
                break
            step *= opts.armijo_shrink
            if opts.armijo_c * step * gnorm**2 <= 1e-14 * max(1.0, abs(phi)):
                break  # same float floor, reached by shrinking
        if not accepted:
            if step <= 1e-16:
                raise StabilizationLost(
                    "no Armijo step keeps the closed loop Hurwitz and decreases "
                    "the objective"
                )
            break
        grad, J = _h2_grad_cost(reduced, F)
        phi = J + quad(F)
        step = min(step / opts.armijo_shrink, 1.0)
    return F, J, step


def admm_solve(
    reduced: ReducedModel,
    spec: PenaltySpec,
    opts: AdmmOptions | None = None,
    F0: np.ndarray | None = None,
) -> tuple[FeedbackGain, AdmmReport]:
    """Reweighted ADMM for the regularized H2 problem.

    Alternates the F-step (H2 descent), K-step (penalty prox), and dual
    update until both residuals clear eps_abs + eps_rel * scale, for
    ``opts.reweight_rounds`` weight updates.  The returned gain projects
    the final K onto its own sparsity pattern within the relative-feedback
    subspace, so K @ [1; 0] = 0 holds to working precision and F = K T.
    """
    opts = opts or AdmmOptions()
    if spec.m != reduced.m or spec.n != reduced.model.n:
        raise DimensionMismatch("penalty spec does not match the model dimensions")
    T = reduced.transform.T
    Kc = centralized_h2(reduced)
    F = np.array(Kc.F if F0 is None else F0, dtype=float)
    if not reduced.is_hurwitz(F):
        raise StabilizationLost("initial gain does not stabilize the reduced model")
    eps_w = opts.reweight_eps
    if eps_w is None:
        eps_w = 1e-3 * float(np.abs(Kc.K).max() or 1.0)
    zero_tol = opts.zero_tol_factor * float(np.abs(Kc.K).max() or 1.0)
    K = F @ T.T
    Lam = np.zeros_like(K)
    rho = opts.rho
    hist = {"primal": [], "dual": [], "J": [], "penalty": [], "rho": []}
    round_cards = []
    status = "max_iterations"
    step = 1.0
    for rnd in range(max(1, opts.reweight_rounds)):
        converged = False
        for _ in range(opts.max_iter):
            F, J, step = _fstep(reduced, F, K - Lam / rho, rho, opts, step0=step)
            FT = F @ T.T
            K_new = apply_prox(FT + Lam / rho, spec, rho)
            r_primal = float(np.linalg.norm(FT - K_new))
            r_dual = rho * float(np.linalg.norm((K_new - K) @ T))
            K = K_new
            Lam = Lam + rho * (FT - K)
            hist["primal"].append(r_primal)
            hist["dual"].append(r_dual)
            hist["J"].append(J)
            hist["penalty"].append(spec.penalty_value(K))
            hist["rho"].append(rho)
            eps_pri = opts.eps_abs + opts.eps_rel * max(
                float(np.linalg.norm(FT)), float(np.linalg.norm(K))
            )
            eps_dual = opts.eps_abs + opts.eps_rel * float(np.linalg.norm(Lam @ T))
            if r_primal <= eps_pri and r_dual <= eps_dual:
                converged = True
                break
            if r_primal > opts.rho_ratio * r_dual:
                rho = min(rho * opts.rho_factor, opts.rho_max)
            elif r_dual > opts.rho_ratio * r_primal:
                rho = max(rho / opts.rho_factor, opts.rho_min)
        round_cards.append(card_of(K, zero_tol))
        status = "converged" if converged else "max_iterations"
        if rnd + 1 < max(1, opts.reweight_rounds):
            spec = reweight(K, spec, eps_w)
    mask = np.abs(K) > zero_tol
    K_out = project_relative(K, spec.N, mask)
    F_out = K_out @ T
    if not reduced.is_hurwitz(F_out):
        # pattern projection destabilized the loop; fall back to the dense
        # consensus point and report it
        log.warning("pattern projection destabilized the gain; returning dense F T^T")
        status += "+projection_unstable"
        K_out = F @ T.T
        F_out = F
    gain = FeedbackGain.from_K(K_out, reduced.transform, zero_tol=zero_tol)
    report = AdmmReport(
        primal=np.array(hist["primal"]),
        dual=np.array(hist["dual"]),
        J=np.array(hist["J"]),
        penalty=np.array(hist["penalty"]),
        rho=np.array(hist["rho"]),
        status=status,
        rounds=max(1, opts.reweight_rounds),
        round_cards=round_cards,
        J_final=h2_cost(reduced, F_out),
        card_final=gain.card,
    )
    return gain, report


# ----------------------------------------------------------------------
# Polishing and sweeps
# ----------------------------------------------------------------------

def polish(
    pattern: np.ndarray,
    reduced: ReducedModel,
    K0: np.ndarray | None = None,
    tol: float = 1e-6,
    max_iter: int = 5000,
) -> FeedbackGain:
    """Structured H2 optimum over a fixed zero/nonzero pattern.

    Projected gradient in physical coordinates: each step zeroes the
    masked entries and recenters the free angle entries (staying inside
    the relative-feedback subspace), mapping back via F = K T.  Stops at
    projected-gradient norm <= tol.
    """
    mask = np.asarray(pattern, dtype=bool)
    T = reduced.transform.T
    N = reduced.transform.N
    candidates = []
    if K0 is not None:
        candidates.append(project_relative(K0, N, mask))
    candidates.append(np.zeros(mask.shape))
    K = None
    for cand in candidates:
        if lti.is_hurwitz(reduced.closed_loop(cand @ T)):
            K = cand
            break
    if K is None:
        raise StructureNotStabilizing(
            "neither the masked iterate nor the zero gain stabilizes this pattern"
        )
    grad, J = _h2_grad_cost(reduced, K @ T)
    step = 1.0
    opt = float("inf")
    for _ in range(max_iter):
        G = project_relative(grad @ T.T, N, mask)
        opt = float(np.linalg.norm(G))
        if opt <= tol:
            break
        accepted = False
        while step > 1e-16:
            Ktry = project_relative(K - step * G, N, mask)
            try:
                Jtry = h2_cost(reduced, Ktry @ T)
            except NotHurwitz:
                step *= 0.5
                continue
            if Jtry <= J - 1e-4 * step * opt**2:
                K, J = Ktry, Jtry
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        grad, J = _h2_grad_cost(reduced, K @ T)
        step = min(step * 2.0, 1.0)
    return FeedbackGain.from_K(K, reduced.transform, zero_tol=0.0)


@dataclass
class SweepPoint:
    gamma: float
    card: int
    J: float
    J_polished: float
    degradation_percent: float
    status: str
    gain: FeedbackGain | None = None


def gamma_sweep(
    reduced: ReducedModel,
    kind: str,
    gammas,
    opts: AdmmOptions | None = None,
    gamma_r_scale: float = 1.0,
    actuators=None,
    keep_gains: bool = True,
) -> list[SweepPoint]:
    """Warm-started sweep over an ascending gamma grid.

    Each point reuses the previous point's F; per-point failures are
    recorded in the status column and the sweep continues.  Reported
    degradation uses the polished cost against the centralized optimum.
    """
    gammas = np.asarray(list(gammas), dtype=float)
    if np.any(np.diff(gammas) < 0):
        raise DimensionMismatch("gamma grid must be ascending")
    opts = opts or AdmmOptions()
    Kc = centralized_h2(reduced)
    Jc = h2_cost(reduced, Kc.F)
    points = []
    F_warm = Kc.F
    for gamma in gammas:
        spec = make_penalty(
            kind, reduced.model, float(gamma),
            gamma_r=float(gamma) * gamma_r_scale, actuators=actuators,
        )
        try:
            gain, report = admm_solve(reduced, spec, opts, F0=F_warm)
            polished = polish(gain.pattern, reduced, K0=gain.K)
            Jp = h2_cost(reduced, polished.F)
            final = FeedbackGain.from_K(
                polished.K, reduced.transform, zero_tol=gain.zero_tol
            )
            points.append(
                SweepPoint(
                    gamma=float(gamma),
                    card=final.card,
                    J=report.J_final,
                    J_polished=Jp,
                    degradation_percent=100.0 * (Jp / Jc - 1.0),
                    status=report.status,
                    gain=final if keep_gains else None,
                )
            )
            F_warm = gain.F
        except (NotHurwitz, StabilizationLost, StructureNotStabilizing,
                RiccatiFailure, NotStabilizable) as exc:
            log.warning("gamma %.4g failed: %s", gamma, exc)
            points.append(
                SweepPoint(
                    gamma=float(gamma), card=-1, J=float("nan"),
                    J_polished=float("nan"), degradation_percent=float("nan"),
                    status=f"failed:{type(exc).__name__}", gain=None,
                )
            )
    return points
