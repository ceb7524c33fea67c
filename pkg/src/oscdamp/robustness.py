"""Controller robustness: operating-point Monte Carlo and phase margins.

Operating-point changes are modeled by scaling the network coupling
strengths (the linearized footprint of load changes) with independent
uniform factors; nominal controllers are then re-scored on every
perturbed model.  Loop robustness is summarized by the guaranteed
multivariable phase margin derived from the minimum singular value of
the return difference I + L(jw) at the plant input,

    margin = 2 arcsin(min_w sigma_min(I + L(jw)) / 2).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, analysis
from .errors import DimensionMismatch, NotHurwitz
from .lti import is_hurwitz
from .grid import PssParameters, SwingNetwork, build_swing_model, build_weights, embed_pss
from .sparse_lqr import h2_cost
from .symmetry import ReducedModel, build_transform, reduce_model


@dataclass(frozen=True, eq=False)
class PerturbationStudy:
    """Per-sample H2 costs of the open loop and each fixed controller.

    Unstable samples carry NaN in the cost arrays and are tallied in
    ``unstable`` per system label; they are never silently dropped.
    """

    magnitude: float
    seed: int
    labels: tuple
    J_nominal: dict
    J_samples: dict      # label -> (samples,) array, NaN where unstable
    unstable: dict       # label -> tuple of sample indices

    def spread(self, label: str) -> float:
        """(max - min) / nominal over the stable samples."""
        vals = self.J_samples[label]
        ok = vals[np.isfinite(vals)]
        if ok.size == 0:
            return float("nan")
        return float((ok.max() - ok.min()) / self.J_nominal[label])

    def summary(self) -> dict:
        out = {}
        for lab in self.labels:
            vals = self.J_samples[lab]
            ok = vals[np.isfinite(vals)]
            nom = self.J_nominal[lab]
            out[lab] = {
                "nominal": nom,
                "mean": float(ok.mean()) if ok.size else float("nan"),
                "spread": self.spread(lab),
                "max_degradation_percent": (
                    100.0 * float(ok.max() / nom - 1.0) if ok.size else float("nan")
                ),
                "unstable": len(self.unstable[lab]),
            }
        return out


@dataclass(frozen=True)
class MarginResult:
    margin_deg: float
    alpha: float          # min sigma_min(I + L)
    omega: float          # frequency of the minimum
    loop_closed: bool     # False when F = 0 (formula still evaluated)


@dataclass(frozen=True, eq=False)
class MarginCurve:
    gammas: np.ndarray
    margins_deg: np.ndarray


def _perturbed_coupling(L: np.ndarray, factors: np.ndarray, magnitude: float) -> np.ndarray:
    """Scale off-diagonal couplings, then restore zero row sums."""
    N = L.shape[0]
    out = np.zeros_like(L)
    t = 0
    for i in range(N):
        for j in range(i + 1, N):
            scale = 1.0 + magnitude * (2.0 * factors[t] - 1.0)
            out[i, j] = out[j, i] = L[i, j] * scale
            t += 1
    np.fill_diagonal(out, -out.sum(axis=1))
    return out


def perturb_and_score(
    net: SwingNetwork,
    gains,
    magnitude: float,
    samples: int,
    seed: int,
    pss: PssParameters | None = None,
    R_scale: float = 1.0,
) -> PerturbationStudy:
    """Score nominal gains across uniformly perturbed coupling matrices.

    ``gains`` maps labels to physical K matrices (the open loop is always
    included as ``"open"``).  Each sample scales every coupling entry by
    an independent uniform factor in [1 - magnitude, 1 + magnitude]; the
    factor draw depends only on the seed, so a fixed seed reproduces the
    study bit-for-bit.
    """
    if not (0.0 <= magnitude < 1.0):
        raise DimensionMismatch("perturbation magnitude must be in [0, 1)")
    if isinstance(gains, dict):
        gain_items = list(gains.items())
    else:
        gain_items = [(f"K{i+1}", K) for i, K in enumerate(gains)]
    labels = ("open",) + tuple(lab for lab, _ in gain_items)

    def build(network):
        model = build_swing_model(network)
        if pss is not None:
            model = embed_pss(model, pss)
        tf = build_transform(model.N, model.n)
        return reduce_model(model, build_weights(model, R_scale), tf)

    reduced = build(net)
    T = reduced.transform.T
    J_nominal = {"open": h2_cost(reduced, np.zeros((reduced.m, reduced.nr)))}
    Fs = {}
    for lab, K in gain_items:
        F = np.asarray(K, dtype=float) @ T
        J_nominal[lab] = h2_cost(reduced, F)  # raises NotHurwitz if not nominal-stable
        Fs[lab] = F

    N = net.size
    rng = np.random.default_rng(seed)
    factors = rng.random((samples, N * (N - 1) // 2))
    J_samples = {lab: np.full(samples, np.nan) for lab in labels}
    unstable = {lab: [] for lab in labels}
    for s in range(samples):
        Lp = _perturbed_coupling(net.coupling, factors[s], magnitude)
        red = build(SwingNetwork(net.inertia, net.damping, Lp))
        for lab in labels:
            F = Fs.get(lab, np.zeros((red.m, red.nr)))
            try:
                J_samples[lab][s] = h2_cost(red, F)
            except NotHurwitz:
                unstable[lab].append(s)
    return PerturbationStudy(
        magnitude=magnitude,
        seed=seed,
        labels=labels,
        J_nominal=J_nominal,
        J_samples=J_samples,
        unstable={lab: tuple(ix) for lab, ix in unstable.items()},
    )


def phase_margin(reduced: ReducedModel, F=None, omegas=None, refine: int = 4) -> MarginResult:
    """Guaranteed multivariable phase margin at the plant input.

    Sweeps sigma_min(I + F (jwI - Abar)^-1 B2bar) over the grid, refines
    the grid ``refine``-fold around the argmin, and converts the minimum
    through the return-difference bound.  F = 0 is allowed (open loop);
    the result is then flagged as no loop closed.
    """
    loop_closed = F is not None and bool(np.any(np.asarray(F) != 0.0))
    if F is None:
        F = np.zeros((reduced.m, reduced.nr))
    F = np.asarray(F, dtype=float)
    Acl = reduced.closed_loop(F)
    if not is_hurwitz(Acl):
        raise NotHurwitz("phase margin requested for an unstable closed loop")
    if omegas is None:
        omegas = analysis.default_grid()
    omegas = np.asarray(omegas, dtype=float)
    Ac = np.ascontiguousarray(reduced.Abar, dtype=np.complex128)
    Bc = np.ascontiguousarray(reduced.B2bar, dtype=np.complex128)
    Fc = np.ascontiguousarray(F, dtype=np.complex128)
    alphas = _kernels.margin_grid(Ac, Bc, Fc, omegas)
    i = int(np.argmin(alphas))
    alpha = float(alphas[i])
    omega_min = float(omegas[i])
    if refine > 1 and len(omegas) > 2:
        lo = omegas[max(i - 1, 0)]
        hi = omegas[min(i + 1, len(omegas) - 1)]
        if hi > lo:
            local = np.exp(np.linspace(math.log(lo), math.log(hi), 4 * refine + 1))
            loc = _kernels.margin_grid(Ac, Bc, Fc, local)
            j = int(np.argmin(loc))
            if loc[j] < alpha:
                alpha = float(loc[j])
                omega_min = float(local[j])
    margin = math.degrees(2.0 * math.asin(min(alpha, 2.0) / 2.0))
    return MarginResult(
        margin_deg=margin, alpha=alpha, omega=omega_min, loop_closed=loop_closed
    )
