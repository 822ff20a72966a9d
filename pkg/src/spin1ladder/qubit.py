"""Numerical baseline: the Hardy-type ladder for two spin-1/2 particles.

State |eta> = cos(alpha)|00> + sin(alpha)|11| in the Schmidt basis;
measurement outcomes are rays in the real x-z plane, written as polar
angles. The certainty and exclusion constraints are eliminated by
construction, leaving a two-parameter search (alpha and a seed angle).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize


@dataclass(frozen=True)
class QubitLadderConfig:
    """K blocks, Schmidt angle alpha (degrees, 45 = maximally entangled),
    and K+1 ray angles (degrees) per particle, index 0..K."""

    k: int
    alpha_deg: float
    a_angles_deg: tuple[float, ...]
    b_angles_deg: tuple[float, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("K must be >= 1")
        if not 0.0 < self.alpha_deg <= 45.0:
            raise ValueError("alpha must lie in (0, 45] degrees")
        if len(self.a_angles_deg) != self.k + 1 or len(self.b_angles_deg) != self.k + 1:
            raise ValueError("need K+1 measurement angles per particle")


@dataclass(frozen=True)
class QubitLadderResult:
    p_k: float
    constraint_residual: float
    config: QubitLadderConfig

    @property
    def feasible(self) -> bool:
        return self.constraint_residual < 1e-8


def _amp(c: float, s: float, t: float, u: float) -> float:
    """<v(t) v(u)|eta> for rays t, u (radians)."""
    return c * math.cos(t) * math.cos(u) + s * math.sin(t) * math.sin(u)


def _marginal_a(c: float, s: float, t: float) -> float:
    return (c * math.cos(t)) ** 2 + (s * math.sin(t)) ** 2


def _marginal_b(c: float, s: float, u: float) -> float:
    return (c * math.cos(u)) ** 2 + (s * math.sin(u)) ** 2


def evaluate(config: QubitLadderConfig) -> QubitLadderResult:
    """P(A_K, B_K) and the worst violation of the 2K certainty constraints
    and the exclusion, all via the two-qubit Born rule."""
    c = math.cos(math.radians(config.alpha_deg))
    s = math.sin(math.radians(config.alpha_deg))
    a = np.radians(config.a_angles_deg)
    b = np.radians(config.b_angles_deg)
    worst = 0.0
    for j in range(1, config.k + 1):
        p_bj_given_aj = _amp(c, s, a[j], b[j - 1]) ** 2 / _marginal_a(c, s, a[j])
        p_aj_given_bj = _amp(c, s, a[j - 1], b[j]) ** 2 / _marginal_b(c, s, b[j])
        worst = max(worst, abs(1.0 - p_bj_given_aj), abs(1.0 - p_aj_given_bj))
    worst = max(worst, _amp(c, s, a[0], b[0]) ** 2)
    p_k = _amp(c, s, a[config.k], b[config.k]) ** 2
    return QubitLadderResult(p_k=p_k, constraint_residual=worst, config=config)


def ladder_settings(k: int, alpha_deg: float, a0_deg: float) -> QubitLadderConfig:
    """Settings satisfying every constraint by construction.

    b0 is the ray excluding (A0, B0); going up, the ray certain given the
    previous one on the other side is (cos, sin) proportional to
    (s cos(prev), c sin(prev)).
    """
    c = math.cos(math.radians(alpha_deg))
    s = math.sin(math.radians(alpha_deg))
    a = [math.radians(a0_deg)]
    b = [math.atan2(-c * math.cos(a[0]), s * math.sin(a[0]))]
    for j in range(1, k + 1):
        a.append(math.atan2(c * math.sin(b[j - 1]), s * math.cos(b[j - 1])))
        b.append(math.atan2(c * math.sin(a[j - 1]), s * math.cos(a[j - 1])))
    return QubitLadderConfig(
        k=k,
        alpha_deg=alpha_deg,
        a_angles_deg=tuple(np.degrees(a)),
        b_angles_deg=tuple(np.degrees(b)),
    )


def optimize(k: int, seed: int = 0, restarts: int = 100) -> QubitLadderResult:
    """Maximize P_K over (alpha, a0) with multi-start local search.

    All constraints hold by construction, so the search is unconstrained
    in two variables.
    """
    if not 1 <= k <= 12:
        raise ValueError("K must be in 1..12")
    rng = np.random.default_rng(seed)

    def neg_pk(x) -> float:
        alpha = min(max(x[0], 1e-6), 45.0)
        return -evaluate(ladder_settings(k, alpha, x[1])).p_k

    best = None
    for _ in range(restarts):
        x0 = np.array([rng.uniform(5.0, 44.5), rng.uniform(0.0, 180.0)])
        res = minimize(neg_pk, x0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 2000})
        if best is None or res.fun < best.fun:
            best = res
    alpha = min(max(best.x[0], 1e-6), 45.0)
    return evaluate(ladder_settings(k, alpha, best.x[1]))


def results_csv(results: list[QubitLadderResult], restarts: int) -> str:
    """CSV table: K, p_k, alpha at optimum, residual, restarts."""
    buf = io.StringIO()
    buf.write("K,p_k,alpha_deg,residual,restarts\n")
    for r in results:
        buf.write(
            f"{r.config.k},{r.p_k:.17g},{r.config.alpha_deg:.6f},"
            f"{r.constraint_residual:.3e},{restarts}\n"
        )
    return buf.getvalue()
