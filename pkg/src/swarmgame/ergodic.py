"""Decentralized receding-horizon ergodic control.

Each agent turns the team's target coefficients and the team's shared coverage
coefficients into its own control: forward rollout under zero default control,
backward costate integration, then u = -R^inv B^T rho clamped to the
acceleration limit. No team-size parameter appears anywhere: scale invariance
is by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import AgentState, DynamicsConfig, Vec2
from .painter import TargetDistribution, cell_centers


class BasisConfig:
    """Cosine basis on [0,1]^2 with K modes per axis.

    h normalizes each mode to unit L2 norm; lam down-weights high frequencies
    as (1 + |k|^2)^(-3/2) so coarse structure dominates the metric.
    """

    def __init__(self, num_coeffs: int = 8):
        if num_coeffs < 1:
            raise ValueError("need at least one coefficient per axis")
        self.num_coeffs = num_coeffs
        k = np.arange(num_coeffs)
        # integral of cos^2(k pi s) over [0,1] is 1 for k=0, else 1/2
        axis = np.where(k == 0, 1.0, 0.5)
        self.h = np.sqrt(np.outer(axis, axis))
        k1 = k[:, None]
        k2 = k[None, :]
        self.lam = (1.0 + k1**2 + k2**2) ** (-1.5)
        self._kpi = k * math.pi

    def eval_all(self, x: float, y: float) -> np.ndarray:
        """All F_k at one point, as a (K, K) array."""
        cx = np.cos(self._kpi * x)
        cy = np.cos(self._kpi * y)
        return np.outer(cx, cy) / self.h

    def grad_all(self, x: float, y: float) -> tuple[np.ndarray, np.ndarray]:
        """Spatial gradient of every F_k at one point: (dF/dx, dF/dy), each (K, K)."""
        cx = np.cos(self._kpi * x)
        cy = np.cos(self._kpi * y)
        sx = -self._kpi * np.sin(self._kpi * x)
        sy = -self._kpi * np.sin(self._kpi * y)
        return np.outer(sx, cy) / self.h, np.outer(cx, sy) / self.h


def basis_eval(k: tuple[int, int], s: Vec2, cfg: BasisConfig) -> float:
    return float(cfg.eval_all(s.x, s.y)[k[0], k[1]])


def basis_grad(k: tuple[int, int], s: Vec2, cfg: BasisConfig) -> Vec2:
    gx, gy = cfg.grad_all(s.x, s.y)
    return Vec2(float(gx[k[0], k[1]]), float(gy[k[0], k[1]]))


@dataclass(frozen=True)
class ErgodicConfig:
    q: float = 1.0  # metric weight
    r_diag: float = 0.01  # diagonal of the control weight R
    horizon: float = 0.5  # seconds; integration step is horizon / horizon_steps
    horizon_steps: int = 10
    barrier_alpha: float = 100.0
    barrier_margin: float = 0.02
    t_mem: float = 10.0  # coverage forgetting time constant, seconds

    def coverage_gamma(self, dyn: DynamicsConfig) -> float:
        return math.exp(-dyn.dt_control / self.t_mem)


@dataclass(frozen=True)
class CoverageCoefficients:
    """Exponentially-forgetting running average of basis values along a trajectory.

    `c` is the raw recursion state; `debiased()` removes the zero-init bias so a
    parked agent's coefficients equal F_k(s) exactly from the first sample.
    """

    c: np.ndarray
    sample_count: int
    memory: float  # forgetting factor per control step

    @staticmethod
    def zero(cfg: BasisConfig, memory: float) -> "CoverageCoefficients":
        k = cfg.num_coeffs
        return CoverageCoefficients(c=np.zeros((k, k)), sample_count=0, memory=memory)

    def debiased(self) -> np.ndarray:
        if self.sample_count == 0:
            return np.zeros_like(self.c)
        return self.c / (1.0 - self.memory**self.sample_count)


def update_own_coverage(cc: CoverageCoefficients, s: Vec2, cfg: BasisConfig) -> CoverageCoefficients:
    g = cc.memory
    c = g * cc.c + (1.0 - g) * cfg.eval_all(s.x, s.y)
    return replace(cc, c=c, sample_count=cc.sample_count + 1)


def team_coeffs(members: list[CoverageCoefficients]) -> np.ndarray:
    """Mean of member coefficients, bitwise invariant to member order.

    Values are summed per mode in sorted numeric order so any permutation of the
    member list produces the identical float result.
    """
    if not members:
        raise ValueError("team has no members")
    stack = np.stack([m.debiased() for m in members])
    stack.sort(axis=0)
    return stack.sum(axis=0) / len(members)


def target_coeffs(phi: TargetDistribution | np.ndarray, cfg: BasisConfig) -> np.ndarray:
    """Basis coefficients of a density grid via midpoint quadrature over cells."""
    grid = phi.grid if isinstance(phi, TargetDistribution) else np.asarray(phi, dtype=float)
    g = grid.shape[0]
    centers = (np.arange(g) + 0.5) / g
    k = np.arange(cfg.num_coeffs)
    cosines = np.cos(np.outer(k, math.pi * centers))  # (K, G)
    return (cosines @ grid @ cosines.T) / cfg.h


def ergodic_metric(c: np.ndarray, phi_k: np.ndarray, cfg: BasisConfig, q: float = 1.0) -> float:
    if c.shape != phi_k.shape:
        raise ValueError("coefficient arrays must have the same shape")
    return q * float((cfg.lam * (c - phi_k) ** 2).sum())


def _exp(z: float) -> float:
    # saturates instead of raising so the controller's finite-check can report
    return math.exp(z) if z < 709.0 else math.inf


def barrier(s: Vec2, cfg: ErgodicConfig) -> float:
    a, d = cfg.barrier_alpha, cfg.barrier_margin
    total = 0.0
    for v in (s.x, s.y):
        total += _exp(a * (v - (1.0 - d))) + _exp(a * (d - v))
    return total


def barrier_grad(s: Vec2, cfg: ErgodicConfig) -> Vec2:
    a, d = cfg.barrier_alpha, cfg.barrier_margin
    def g(v: float) -> float:
        return a * _exp(a * (v - (1.0 - d))) - a * _exp(a * (d - v))
    return Vec2(g(s.x), g(s.y))


def compute_control(
    agent: AgentState,
    team_c: np.ndarray,
    phi_k: np.ndarray,
    basis: BasisConfig,
    cfg: ErgodicConfig,
    dyn: DynamicsConfig,
) -> Vec2:
    """Optimal control for one agent against the team's current coefficients.

    Rolls the agent forward over the horizon under zero default control,
    integrates the costate backward along that rollout, and returns
    -R^inv B^T rho(0) clamped to u_max.
    """
    steps = cfg.horizon_steps
    dt = cfg.horizon / steps
    w = 1.0 - cfg.coverage_gamma(dyn)  # per-step coverage injection weight
    # metric gradient factor per mode, fixed along the horizon
    coef = 2.0 * cfg.q * w * basis.lam * (team_c - phi_k)

    # forward rollout under u_def = 0: velocity constant, position drifts
    px = agent.position.x + agent.velocity.x * dt * np.arange(steps + 1)
    py = agent.position.y + agent.velocity.y * dt * np.arange(steps + 1)

    # backward costate: rho_j = rho_{j+1} + dt * (S(x_{j+1}) + A^T rho_{j+1})
    # where S has position components only and (A^T rho)_v = rho_p
    rho_p = np.zeros(2)
    rho_v = np.zeros(2)
    for j in range(steps - 1, -1, -1):
        x, y = px[j + 1], py[j + 1]
        gx, gy = basis.grad_all(x, y)
        bg = barrier_grad(Vec2(x, y), cfg)
        sx = float((coef * gx).sum()) + bg.x
        sy = float((coef * gy).sum()) + bg.y
        rho_v = rho_v + dt * rho_p
        rho_p = rho_p + dt * np.array([sx, sy])
        if not (np.all(np.isfinite(rho_p)) and np.all(np.isfinite(rho_v))):
            raise RuntimeError(
                f"costate diverged for agent {agent.id} at step {j}: "
                f"pos=({agent.position.x}, {agent.position.y}) rho_p={rho_p} rho_v={rho_v}"
            )

    u = Vec2(float(-rho_v[0] / cfg.r_diag), float(-rho_v[1] / cfg.r_diag))
    return u.clamped_norm(dyn.u_max)
