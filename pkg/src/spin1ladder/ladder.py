"""Ladder direction tables, exclusion windows, and Born-rule verification.

The table builder reproduces the two figure layouts: the 5-observable
stepladder and its K-block generalization with 4K+1 observables per
particle. All angles on this module's surface are degrees; trig happens
in radians.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize

from .errors import DegenerateAngle, OutOfRangeTheta
from .spin import Direction3
from .states import BipartiteState, ObservableEvent, conditional_probability, joint_probability

POLE_TOL = 1e-9


def _check_thetas(thetas_deg) -> np.ndarray:
    th = np.asarray(thetas_deg, dtype=float)
    if th.size == 0:
        raise OutOfRangeTheta("need at least one theta")
    if np.any(th <= 0.0) or np.any(th >= 90.0):
        raise OutOfRangeTheta(f"thetas must lie in (0, 90) degrees, got {th}")
    return th


def coefficients(thetas_deg) -> np.ndarray:
    """Ladder coefficients c_1..c_K.

    c_1 = sin(theta_1), c_{j+1} = c_j cos(theta_{j+1} - theta_j); the
    recursion telescopes to the explicit product
    sin(theta_1) prod_k cos(theta_{k+1} - theta_k).
    """
    th = np.radians(_check_thetas(thetas_deg))
    c = np.empty(th.size)
    c[0] = math.sin(th[0])
    for j in range(1, th.size):
        c[j] = c[j - 1] * math.cos(th[j] - th[j - 1])
    explicit = math.sin(th[0]) * np.concatenate(
        ([1.0], np.cumprod(np.cos(np.diff(th))))
    )
    assert np.max(np.abs(c - explicit)) < 1e-12
    return c


@dataclass(frozen=True)
class LadderSpec:
    """Number of blocks K, relative angle phi, and block angles theta_1..theta_K.

    The coefficients are derived, not free.
    """

    k: int
    phi_deg: float
    thetas_deg: tuple[float, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("K must be >= 1")
        if len(self.thetas_deg) != self.k:
            raise ValueError(f"expected {self.k} thetas, got {len(self.thetas_deg)}")
        _check_thetas(self.thetas_deg)
        object.__setattr__(self, "thetas_deg", tuple(float(t) for t in self.thetas_deg))

    @property
    def coefficients(self) -> np.ndarray:
        return coefficients(self.thetas_deg)


@dataclass(frozen=True)
class InferenceEdge:
    """A certainty arrow: the source outcomes on one particle make the
    target outcome on the other particle certain."""

    source_particle: int
    source_indices: tuple[int, ...]
    target_index: int
    kind: str  # "same-direction" | "perpendicular" | "pair"

    @property
    def target_particle(self) -> int:
        return 2 if self.source_particle == 1 else 1


@dataclass(frozen=True)
class DirectionTable:
    """4K+1 events per particle plus the certainty edges between them."""

    k: int
    phi_deg: float
    thetas_deg: tuple[float, ...]
    a_events: tuple[ObservableEvent, ...]
    b_events: tuple[ObservableEvent, ...]
    edges: tuple[InferenceEdge, ...]

    def event(self, particle: int, index: int) -> ObservableEvent:
        return (self.a_events if particle == 1 else self.b_events)[index]

    def to_json(self) -> str:
        events = [
            {
                "index": i,
                "particle": ev.particle,
                "direction": [ev.direction.x, ev.direction.y, ev.direction.z],
                "outcome": ev.outcome,
            }
            for side in (self.a_events, self.b_events)
            for i, ev in enumerate(side)
        ]
        edges = [
            {
                "sources": [[e.source_particle, i] for i in e.source_indices],
                "target": [e.target_particle, e.target_index],
                "kind": e.kind,
            }
            for e in self.edges
        ]
        return json.dumps(
            {
                "k": self.k,
                "phi_deg": self.phi_deg,
                "thetas_deg": list(self.thetas_deg),
                "events": events,
                "edges": edges,
            }
        )


def _trig(phi_deg: float, thetas_deg) -> tuple[float, float, np.ndarray, np.ndarray]:
    phi = math.radians(phi_deg)
    if not 0.0 < phi_deg < 180.0:
        raise DegenerateAngle(f"phi = {phi_deg} deg outside (0, 180)")
    if abs(phi_deg - 90.0) < POLE_TOL:
        raise DegenerateAngle("phi = 90 deg: tan(phi) pole in the direction table")
    th = np.radians(_check_thetas(thetas_deg))
    return math.tan(phi), 1.0 / math.tan(phi), np.sin(th), np.cos(th)


def ladder_table(spec: LadderSpec) -> DirectionTable:
    """Direction table of the K-block ladder (4K+1 events per particle).

    Index layout, with t = K - m counting theta indices from the top:
    the initial block holds indices 4K .. 4(K-1), the repeating blocks
    follow, and the final block (indices 3..0) is the stepladder tail.
    """
    k = spec.k
    tan_phi, cot_phi, sin_th, cos_th = _trig(spec.phi_deg, spec.thetas_deg)
    c = spec.coefficients

    a_dir: dict[int, tuple] = {}
    a_out: dict[int, int] = {}
    b_dir: dict[int, tuple] = {}
    b_out: dict[int, int] = {}

    a_dir[4 * k] = (1.0, 0.0, 0.0)
    a_out[4 * k] = 0
    phi = math.radians(spec.phi_deg)
    b_dir[4 * k] = (math.cos(phi), math.sin(phi), 0.0)
    b_out[4 * k] = 0

    for t in range(1, k + 1):
        i = 4 * (k - t)
        s, co, ct = sin_th[t - 1], cos_th[t - 1], c[t - 1]
        a_dir[i + 3] = (tan_phi, -s / ct, co / ct)
        a_out[i + 3] = 1
        a_dir[i + 2] = (tan_phi, -s / ct, -co / ct)
        a_out[i + 2] = 1
        if t < k:
            a_dir[i + 1] = (0.0, co, s)
            a_out[i + 1] = 1
            a_dir[i] = (0.0, co, -s)
            a_out[i] = 1
            b_dir[i + 3] = (0.0, co, s)
            b_out[i + 3] = 1
            b_dir[i + 2] = (0.0, co, -s)
            b_out[i + 2] = 1
            b_dir[i + 1] = (cot_phi, ct * s, -ct * co)
            b_out[i + 1] = 0
            b_dir[i] = (cot_phi, ct * s, ct * co)
            b_out[i] = 0
        else:
            # final block: the stepladder tail
            a_dir[1] = (0.0, co, -s)
            a_out[1] = 1
            a_dir[0] = (cot_phi, ct * s, -ct * co)
            a_out[0] = 0
            b_dir[3] = (0.0, co, -s)
            b_out[3] = 1
            b_dir[2] = (0.0, co, s)
            b_out[2] = 1
            b_dir[1] = (tan_phi, -s / ct, co / ct)
            b_out[1] = 1
            b_dir[0] = (cot_phi, ct * s, ct * co)
            b_out[0] = 0

    a_events = tuple(
        ObservableEvent(1, Direction3(*a_dir[i]), a_out[i]) for i in range(4 * k + 1)
    )
    b_events = tuple(
        ObservableEvent(2, Direction3(*b_dir[i]), b_out[i]) for i in range(4 * k + 1)
    )

    edges: list[InferenceEdge] = []
    # A_{4K} = 0 makes every x = 0 direction on the B side certain to be hbar^2
    for i in range(4 * k + 1):
        if b_out[i] == 1 and b_dir[i][0] == 0.0:
            edges.append(InferenceEdge(1, (4 * k,), i, "perpendicular"))
    # B_{4K} = 0 pins the two tan(phi) rows at the top of the A side
    edges.append(InferenceEdge(2, (4 * k,), 4 * k - 1, "perpendicular"))
    edges.append(InferenceEdge(2, (4 * k,), 4 * k - 2, "perpendicular"))
    # diagonal chain B_j -> A_{j-2}
    for j in range(3, 4 * k):
        kind = "same-direction" if b_out[j] == 1 else "perpendicular"
        edges.append(InferenceEdge(2, (j,), j - 2, kind))
    # A_3 -> B_1 closes the loop at the bottom
    edges.append(InferenceEdge(1, (3,), 1, "same-direction"))
    # pair inferences onto the 0-outcome rows
    for m in range(1, k):
        edges.append(InferenceEdge(1, (4 * m, 4 * m + 2), 4 * m, "pair"))
        edges.append(InferenceEdge(1, (4 * m + 1, 4 * m + 3), 4 * m + 1, "pair"))
    edges.append(InferenceEdge(1, (1, 2), 0, "pair"))
    edges.append(InferenceEdge(2, (2, 1), 0, "pair"))

    return DirectionTable(
        k=k,
        phi_deg=float(spec.phi_deg),
        thetas_deg=spec.thetas_deg,
        a_events=a_events,
        b_events=b_events,
        edges=tuple(edges),
    )


def stepladder_table(phi_deg: float, theta_deg: float) -> DirectionTable:
    """The 5-observable table (K = 1): A0..A4, B0..B4 with 8 certainty edges."""
    return ladder_table(LadderSpec(1, phi_deg, (theta_deg,)))


def exclusion_rhs(thetas_deg) -> float:
    """c_K^2 (cos^2 theta_K - sin^2 theta_K): the value cot^2 phi must equal
    for the two terminal 0-outcome directions to be orthogonal."""
    th = np.radians(_check_thetas(thetas_deg))
    c = coefficients(thetas_deg)
    return float(c[-1] ** 2 * math.cos(2 * th[-1]))


@dataclass(frozen=True)
class PhiWindow:
    """Feasibility window of phi for a given K, plus the optimizing thetas."""

    k: int
    phi_min_deg: float
    phi_max_deg: float
    maximum: float
    analytic_maximum: float
    thetas_deg: tuple[float, ...]

    def contains(self, phi_deg: float, slack: float = 1e-9) -> bool:
        return self.phi_min_deg - slack <= phi_deg <= self.phi_max_deg + slack


def _neg_rhs_and_grad(th_rad: np.ndarray) -> tuple[float, np.ndarray]:
    k = th_rad.size
    s1 = math.sin(th_rad[0])
    diffs = np.diff(th_rad)
    cosd = np.cos(diffs)
    c2 = math.cos(2 * th_rad[-1])
    val = s1**2 * np.prod(cosd) ** 2 * c2
    grad = np.zeros(k)
    # d log|rhs| / d theta_j, then scaled by rhs (valid away from zeros)
    tand = np.tan(diffs)
    if k == 1:
        grad[0] = val * (2.0 / math.tan(th_rad[0]) - 2.0 * math.tan(2 * th_rad[0]))
    else:
        grad[0] = val * (2.0 / math.tan(th_rad[0]) + 2.0 * tand[0])
        for j in range(1, k - 1):
            grad[j] = val * (-2.0 * tand[j - 1] + 2.0 * tand[j])
        grad[k - 1] = val * (-2.0 * tand[k - 2] - 2.0 * math.tan(2 * th_rad[-1]))
    return -val, -grad


def optimal_theta_profile(k: int) -> np.ndarray:
    """Stationary profile theta_j = 90 - j * 180/(2K+1) degrees.

    Used as the primary start of the multi-start search; the search
    itself decides whether it is the maximizer.
    """
    j = np.arange(1, k + 1)
    return 90.0 - j * 180.0 / (2 * k + 1)


def phi_window(k: int, n_starts: int = 50, seed: int = 0) -> PhiWindow:
    """Feasible phi interval [arccot(sqrt M), 180 - arccot(sqrt M)] where M is
    the maximum of the exclusion right-hand side over theta profiles.

    Multi-start local search (analytic-style profile plus random
    restarts), compared against the analytic reference
    cos^{2K+1}(pi/(2K+1)).
    """
    if k < 1:
        raise ValueError("K must be >= 1")
    rng = np.random.default_rng(seed)
    bounds = [(1e-6, math.pi / 2 - 1e-6)] * k
    starts = [np.radians(optimal_theta_profile(k))]
    for _ in range(max(n_starts - 1, 0)):
        starts.append(np.sort(rng.uniform(0.01, math.pi / 2 - 0.01, size=k))[::-1])
    best_val, best_th = -np.inf, starts[0]
    for x0 in starts:
        res = minimize(
            _neg_rhs_and_grad, x0, jac=True, method="L-BFGS-B", bounds=bounds,
            options={"maxiter": 500, "ftol": 1e-16, "gtol": 1e-14},
        )
        if -res.fun > best_val:
            best_val, best_th = -res.fun, res.x
    lo = math.degrees(math.atan2(1.0, math.sqrt(best_val)))
    analytic = math.cos(math.pi / (2 * k + 1)) ** (2 * k + 1)
    return PhiWindow(
        k=k,
        phi_min_deg=lo,
        phi_max_deg=180.0 - lo,
        maximum=float(best_val),
        analytic_maximum=analytic,
        thetas_deg=tuple(np.degrees(best_th)),
    )


def solve_exclusion(k: int, phi_deg: float, window: PhiWindow | None = None):
    """Thetas with exclusion_rhs = cot^2(phi), or None when phi is infeasible.

    Root-finds along the one-parameter scaling u * theta_opt of the
    window-optimal profile, which sweeps the right-hand side from 0 up to
    its maximum.
    """
    if not 0.0 < phi_deg < 180.0:
        raise DegenerateAngle(f"phi = {phi_deg} deg outside (0, 180)")
    phi = math.radians(phi_deg)
    target = (math.cos(phi) / math.sin(phi)) ** 2
    if abs(phi_deg - 90.0) < POLE_TOL:
        # cot(phi) = 0: any profile with theta_K = 45 kills the right-hand side
        step = min(5.0, 40.0 / k)
        return [45.0 + (k - j) * step for j in range(1, k + 1)]
    if window is None:
        window = phi_window(k)
    if target > window.maximum + 1e-12:
        return None
    th_opt = np.radians(np.asarray(window.thetas_deg))

    def f(u: float) -> float:
        th = u * th_opt
        s1 = math.sin(th[0])
        val = s1**2 * np.prod(np.cos(np.diff(th))) ** 2 * math.cos(2 * th[-1])
        return val - target

    if f(1.0) < 0:  # numerically at the very edge of the window
        return None
    u = brentq(f, 1e-9, 1.0, xtol=1e-15) if f(1.0) > 0 else 1.0
    thetas = list(np.degrees(u * th_opt))
    assert abs(exclusion_rhs(thetas) - target) < 1e-10
    return thetas


@dataclass(frozen=True)
class EdgeCheck:
    edge: InferenceEdge
    conditional: float
    residual: float


@dataclass(frozen=True)
class VerificationReport:
    """Born-rule audit of a direction table."""

    start_probability: float
    edge_checks: tuple[EdgeCheck, ...]
    exclusion_probability: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        ok = (
            all(ch.residual < self.tolerance for ch in self.edge_checks)
            and self.exclusion_probability < self.tolerance
            and self.start_probability > 0.0
        )
        object.__setattr__(self, "passed", ok)


def verify_ladder(
    state: BipartiteState, table: DirectionTable, tolerance: float = 1e-10
) -> VerificationReport:
    """Check every certainty edge and the terminal exclusion against the
    Born rule; also reports the start probability P(A_{4K}, B_{4K})."""
    n = 4 * table.k
    start = joint_probability(state, table.event(1, n), table.event(2, n))
    checks = []
    for edge in table.edges:
        sources = [table.event(edge.source_particle, i) for i in edge.source_indices]
        target = table.event(edge.target_particle, edge.target_index)
        cond = conditional_probability(state, target, sources)
        checks.append(EdgeCheck(edge=edge, conditional=cond, residual=abs(1.0 - cond)))
    exclusion = joint_probability(state, table.event(1, 0), table.event(2, 0))
    return VerificationReport(
        start_probability=start,
        edge_checks=tuple(checks),
        exclusion_probability=exclusion,
        tolerance=tolerance,
    )


def max_p4() -> tuple[float, float]:
    """(max of (1/3) cos^2 phi over the K = 1 window, argmax phi in degrees)."""
    window = phi_window(1)
    phi = window.phi_min_deg
    return (math.cos(math.radians(phi)) ** 2 / 3.0, phi)
