"""Spin operators, directions, and spectral projectors of squared spin components.

Everything works in hbar = 1 units: outcomes of a squared spin component
are stored as 0 or 1 (meaning 0 or hbar^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonOrthogonal

ORTHO_TOL = 1e-9
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class Direction3:
    """Unit vector in real 3-space. The constructor normalizes.

    Measurement settings from the figure tables are given as unnormalized
    tuples (e.g. (tan phi, -1, cot theta)); passing them here normalizes
    them once and for all.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = np.sqrt(self.x**2 + self.y**2 + self.z**2)
        if not np.isfinite(norm) or norm < 1e-300:
            raise ValueError(f"cannot normalize direction ({self.x}, {self.y}, {self.z})")
        object.__setattr__(self, "x", self.x / norm)
        object.__setattr__(self, "y", self.y / norm)
        object.__setattr__(self, "z", self.z / norm)

    @classmethod
    def from_array(cls, v) -> "Direction3":
        v = np.asarray(v, dtype=float)
        return cls(v[0], v[1], v[2])

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "Direction3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z


def angle_between(u: Direction3, v: Direction3) -> float:
    """Angle between two directions in degrees, in [0, 180]."""
    return float(np.degrees(np.arccos(np.clip(u.dot(v), -1.0, 1.0))))


@dataclass(frozen=True)
class SpinRep:
    """Spin-s representation, stored as 2s to keep it integral."""

    two_s: int

    def __post_init__(self):
        if self.two_s < 1:
            raise ValueError("need dimension >= 2, i.e. two_s >= 1")

    @property
    def s(self) -> float:
        return self.two_s / 2

    @property
    def dimension(self) -> int:
        return self.two_s + 1


SPIN1 = SpinRep(2)


def is_hermitian(op: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(op - op.conj().T)) <= tol)


def spin_operators(rep: SpinRep) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Sx, Sy, Sz) in the |s, m> basis ordered m = s .. -s, hbar = 1.

    Built from the ladder operators: (S+)_{m', m} = sqrt(s(s+1) - m(m+1))
    for m' = m + 1.
    """
    s = rep.s
    m = np.arange(s, -s - 0.5, -1.0)
    sz = np.diag(m).astype(complex)
    sp = np.zeros((rep.dimension, rep.dimension), dtype=complex)
    for i in range(1, rep.dimension):
        # row i-1 has m' = m[i-1] = m[i] + 1
        sp[i - 1, i] = np.sqrt(s * (s + 1) - m[i] * (m[i] + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / (2j)
    return sx, sy, sz


def spin_component(rep: SpinRep, n: Direction3) -> np.ndarray:
    """S . n for the given representation; eigenvalues {s, s-1, ..., -s}."""
    sx, sy, sz = spin_operators(rep)
    return n.x * sx + n.y * sy + n.z * sz


@dataclass(frozen=True)
class ProjectorPair:
    """Spectral projectors of (S.n)^2 for spin 1.

    p_zero is rank 1 (outcome 0), p_one is rank 2 (outcome hbar^2).
    """

    p_zero: np.ndarray = field(repr=False)
    p_one: np.ndarray = field(repr=False)

    def projector(self, outcome: int) -> np.ndarray:
        if outcome == 0:
            return self.p_zero
        if outcome == 1:
            return self.p_one
        raise ValueError(f"outcome must be 0 or 1 (hbar^2 units), got {outcome}")


def squared_projectors(n: Direction3) -> ProjectorPair:
    """Projectors of (S.n)^2 for spin 1.

    For spin 1 the operator (S.n)^2 has spectrum {0, 1, 1} in hbar^2
    units, so it *is* the projector onto its own eigenvalue-1 eigenspace.
    """
    sn = spin_component(SPIN1, n)
    p_one = sn @ sn
    p_zero = np.eye(3, dtype=complex) - p_one
    return ProjectorPair(p_zero=p_zero, p_one=p_one)


def triad_complete(u: Direction3, v: Direction3) -> Direction3:
    """Unit cross product u x v, completing an orthonormal pair to a triad."""
    if abs(u.dot(v)) >= ORTHO_TOL:
        raise NonOrthogonal(f"directions not orthogonal: u.v = {u.dot(v):.3e}")
    w = np.cross(u.as_array(), v.as_array())
    return Direction3.from_array(w)
