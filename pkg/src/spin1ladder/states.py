"""Bipartite spin states and Born-rule probabilities for squared-spin events."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import (
    DimensionMismatch,
    IncompatibleGivens,
    NotMaximallyEntangled,
    ZeroConditioningProbability,
)
from .spin import SPIN1, Direction3, spin_component, squared_projectors

COMPAT_TOL = 1e-9


@dataclass(frozen=True)
class ObservableEvent:
    """Outcome of measuring (S.n)^2 on one particle.

    outcome is 0 or 1 in hbar^2 units.
    """

    particle: int
    direction: Direction3
    outcome: int

    def __post_init__(self):
        if self.particle not in (1, 2):
            raise ValueError("particle must be 1 or 2")
        if self.outcome not in (0, 1):
            raise ValueError("outcome must be 0 or 1 (hbar^2 units)")


@dataclass(frozen=True)
class BipartiteState:
    """Normalized amplitude matrix of a two-particle spin system.

    amplitudes[a, b] multiplies |a>|b> in the local |s, m> bases
    (m ordered s .. -s on each side).
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: |amp| = {norm}")
        amp = amp.copy()
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim1(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def dim2(self) -> int:
        return self.amplitudes.shape[1]

    def to_json(self) -> str:
        flat = [[float(a.real), float(a.imag)] for a in self.amplitudes.ravel()]
        return json.dumps({"dim1": self.dim1, "dim2": self.dim2, "amplitudes": flat})

    @classmethod
    def from_json(cls, text: str) -> "BipartiteState":
        doc = json.loads(text)
        amp = np.array([complex(re, im) for re, im in doc["amplitudes"]])
        return cls(amp.reshape(doc["dim1"], doc["dim2"]))


def singlet_spin1() -> BipartiteState:
    """Total-spin-zero state of two spin-1 particles.

    (1/sqrt 3) (|hbar>|-hbar> + |-hbar>|hbar> - |0>|0>) in the m-basis.
    """
    amp = np.zeros((3, 3), dtype=complex)
    amp[0, 2] = 1  # |m=1>|m=-1>
    amp[2, 0] = 1
    amp[1, 1] = -1
    return BipartiteState(amp / np.sqrt(3))


def _check_spin1(state: BipartiteState):
    if state.dim1 != 3 or state.dim2 != 3:
        raise DimensionMismatch(
            f"need a two-spin-1 state (3x3 amplitudes), got {state.dim1}x{state.dim2}"
        )


def _compatible(u: Direction3, v: Direction3) -> bool:
    """Squared spin-1 components commute iff directions are parallel or orthogonal."""
    d = abs(u.dot(v))
    return d < COMPAT_TOL or d > 1.0 - COMPAT_TOL


def _particle_projector(events: list[ObservableEvent]) -> np.ndarray:
    proj = np.eye(3, dtype=complex)
    for ev in events:
        proj = proj @ squared_projectors(ev.direction).projector(ev.outcome)
    return proj


def _event_probability(state: BipartiteState, events: list[ObservableEvent]) -> float:
    p1 = _particle_projector([e for e in events if e.particle == 1])
    p2 = _particle_projector([e for e in events if e.particle == 2])
    amp = state.amplitudes
    # <psi| P1 (x) P2 |psi> with psi as a 3x3 amplitude matrix
    val = np.einsum("ab,ac,bd,cd->", amp.conj(), p1, p2, amp)
    return float(np.clip(val.real, 0.0, 1.0))


def joint_probability(state: BipartiteState, a: ObservableEvent, b: ObservableEvent) -> float:
    """Born probability of two squared-spin outcomes on distinct particles."""
    _check_spin1(state)
    if a.particle == b.particle:
        raise ValueError("joint_probability expects events on distinct particles")
    return _event_probability(state, [a, b])


def conditional_probability(
    state: BipartiteState,
    target: ObservableEvent,
    given: list[ObservableEvent],
) -> float:
    """P(target | given) for compatible conditioning events.

    Same-particle events must have pairwise parallel or orthogonal
    directions (otherwise the squared components do not commute).
    """
    _check_spin1(state)
    events = list(given) + [target]
    for p in (1, 2):
        evs = [e for e in events if e.particle == p]
        for i in range(len(evs)):
            for j in range(i + 1, len(evs)):
                if not _compatible(evs[i].direction, evs[j].direction):
                    raise IncompatibleGivens(
                        f"particle {p} events along non-commuting directions"
                    )
    p_given = _event_probability(state, list(given))
    if p_given <= 1e-12:
        raise ZeroConditioningProbability(f"P(given) = {p_given}")
    return _event_probability(state, events) / p_given


@dataclass(frozen=True)
class SchmidtData:
    """Schmidt decomposition: descending coefficients and orthonormal bases.

    state amplitudes = sum_k coefficients[k] * outer(left[:, k], right[:, k])
    """

    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.coefficients) @ self.right.T


def schmidt(state: BipartiteState) -> SchmidtData:
    """Singular-value decomposition of the amplitude matrix."""
    u, s, vh = np.linalg.svd(state.amplitudes)
    return SchmidtData(coefficients=s, left=u, right=vh.T)


def _params_to_unitary(params) -> np.ndarray:
    """3x3 unitary from either a unitary matrix or 9 real parameters.

    The 9 reals fill a Hermitian generator H (3 diagonal, 3 real and 3
    imaginary off-diagonal entries); U = exp(iH). Zero parameters give
    the identity.
    """
    arr = np.asarray(params)
    if arr.shape == (3, 3):
        u = arr.astype(complex)
        if np.max(np.abs(u @ u.conj().T - np.eye(3))) > 1e-10:
            raise ValueError("matrix parameter is not unitary")
        return u
    v = arr.astype(float).ravel()
    if v.size != 9:
        raise ValueError("params must be a 3x3 unitary or 9 reals")
    h = np.diag(v[:3]).astype(complex)
    pairs = [(0, 1), (0, 2), (1, 2)]
    for k, (i, j) in enumerate(pairs):
        h[i, j] = v[3 + k] + 1j * v[6 + k]
        h[j, i] = v[3 + k] - 1j * v[6 + k]
    return expm(1j * h)


def maximally_entangled_spin1(unitary_params) -> BipartiteState:
    """(identity (x) U) applied to the spin-1 singlet.

    All such states have Schmidt coefficients (1/sqrt3, 1/sqrt3, 1/sqrt3);
    identity parameters recover the singlet itself.
    """
    u = _params_to_unitary(unitary_params)
    base = singlet_spin1().amplitudes
    return BipartiteState(base @ u.T)


def _zero_eigenvector(n: Direction3) -> np.ndarray:
    """Unit eigenvector of (S.n)^2 with eigenvalue 0 (spin 1)."""
    sn = spin_component(SPIN1, n)
    w, v = np.linalg.eigh(sn @ sn)
    k = int(np.argmin(np.abs(w)))
    return v[:, k]


# Columns: the cartesian kets |x>, |y>, |z> written in the m-basis
# (|1> = -(|x> + i|y>)/sqrt2, |-1> = (|x> - i|y>)/sqrt2, |0> = |z>), so
# |x> = (|-1> - |1>)/sqrt2 and |y> = i(|1> + |-1>)/sqrt2.  In this basis
# the zero eigenvector of (S.n)^2 has components proportional to n itself.
_CARTESIAN = np.array(
    [
        [-1 / np.sqrt(2), 1j / np.sqrt(2), 0],
        [0, 0, 1],
        [1 / np.sqrt(2), 1j / np.sqrt(2), 0],
    ],
    dtype=complex,
)


def _real_up_to_phase(w: np.ndarray, tol: float) -> np.ndarray | None:
    """Real representative of w if w is a real vector times a phase, else None."""
    s = np.sum(w * w)
    norm = float(np.sqrt(np.real(np.vdot(w, w))))
    phase = np.exp(-0.5j * np.angle(s)) if abs(s) > 0 else 1.0
    dephased = w * phase
    # the half-angle phase is defined modulo pi; either sign must work
    residual = float(np.linalg.norm(np.imag(dephased)))
    if residual >= tol * norm:
        return None
    return np.real(dephased)


def partner_direction(
    state: BipartiteState, n_j: Direction3, tol: float = 1e-9
) -> Direction3 | None:
    """Direction n_k with P((S2.n_k)^2 = 0 | (S1.n_j)^2 = 0) = 1, if one exists.

    The zero-outcome on particle 1 collapses particle 2 onto the image of
    the zero eigenvector through the amplitude matrix; in the cartesian
    basis, zero eigenvectors of (S.n)^2 are exactly the real unit vectors,
    so the image must be real up to a global phase. Returns None when it
    is not (the existence claim is checked, not assumed).
    """
    _check_spin1(state)
    coeffs = schmidt(state).coefficients
    if np.max(coeffs) - np.min(coeffs) > 1e-9:
        raise NotMaximallyEntangled(f"Schmidt coefficients {coeffs} not equal")
    v = _zero_eigenvector(n_j)
    w = state.amplitudes.T @ v.conj()
    w_cart = _CARTESIAN.conj().T @ w
    real_vec = _real_up_to_phase(w_cart, tol)
    if real_vec is None:
        return None
    n_k = Direction3.from_array(real_vec)
    zero_j = ObservableEvent(1, n_j, 0)
    if conditional_probability(state, ObservableEvent(2, n_k, 0), [zero_j]) < 1 - tol:
        return None
    return n_k
