"""Orthonormal measurement triads with the cyclic relative-angle pattern,
and the fraction of joint outcomes reached by the ladder contradiction."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentPattern
from .ladder import PhiWindow
from .spin import Direction3, angle_between
from .states import BipartiteState, ObservableEvent, joint_probability

PATTERN_TOL = 1e-8
COVER_SLACK = 1e-9

# cyclic assignment: angle(first[i], second[j]) = pattern angle number CYCLE[i][j]
_CYCLE = [[1, 3, 2], [2, 1, 3], [3, 2, 1]]


@dataclass(frozen=True)
class AnglePattern:
    """Cyclic relative angles (degrees) between two orthonormal triads.

    Realizable iff the squared cosines sum to 1 and the pairwise cosine
    products sum to 0.
    """

    phi1_deg: float
    phi2_deg: float
    phi3_deg: float

    @property
    def cosines(self) -> np.ndarray:
        return np.cos(np.radians([self.phi1_deg, self.phi2_deg, self.phi3_deg]))

    def residuals(self) -> tuple[float, float]:
        c = self.cosines
        return (
            float(abs(np.sum(c**2) - 1.0)),
            float(abs(c[0] * c[1] + c[1] * c[2] + c[2] * c[0])),
        )

    def validate(self, tol: float = PATTERN_TOL):
        r_norm, r_orth = self.residuals()
        if r_norm > tol or r_orth > tol:
            raise InconsistentPattern(
                f"pattern {self} violates constraints: residuals {r_norm:.2e}, {r_orth:.2e}"
            )


# the two built-in patterns: arccos((1+sqrt3)/3, 1/3, (1-sqrt3)/3) for the
# stepladder geometry and arccos(2/3, 2/3, -1/3) for the K = 11 geometry
def pattern_sec3() -> AnglePattern:
    return AnglePattern(
        math.degrees(math.acos((1 + math.sqrt(3)) / 3)),
        math.degrees(math.acos(1 / 3)),
        math.degrees(math.acos((1 - math.sqrt(3)) / 3)),
    )


def pattern_sec4() -> AnglePattern:
    a = math.degrees(math.acos(2 / 3))
    return AnglePattern(a, a, math.degrees(math.acos(-1 / 3)))


@dataclass(frozen=True)
class TriadPair:
    """Two orthonormal triads realizing an AnglePattern in the cyclic layout."""

    first: tuple[Direction3, Direction3, Direction3]
    second: tuple[Direction3, Direction3, Direction3]

    def angle(self, i: int, j: int) -> float:
        return angle_between(self.first[i], self.second[j])


def build_triads(pattern: AnglePattern) -> TriadPair:
    """First triad = standard basis; second triad = rows of the circulant
    matrix of pattern cosines, orthogonal exactly when the pattern is valid."""
    pattern.validate()
    c1, c2, c3 = pattern.cosines
    rows = np.array([[c1, c2, c3], [c3, c1, c2], [c2, c3, c1]])
    first = (Direction3(1, 0, 0), Direction3(0, 1, 0), Direction3(0, 0, 1))
    second = tuple(Direction3.from_array(r) for r in rows)
    pair = TriadPair(first=first, second=second)
    angles = [pattern.phi1_deg, pattern.phi2_deg, pattern.phi3_deg]
    for i in range(3):
        for j in range(3):
            want = angles[_CYCLE[i][j] - 1]
            if abs(pair.angle(i, j) - want) > 1e-8:
                raise InconsistentPattern(
                    f"realized angle ({i},{j}) = {pair.angle(i, j)} != {want}"
                )
    return pair


@dataclass(frozen=True)
class CoverageCell:
    u_index: int
    v_index: int
    angle_deg: float
    probability: float
    covered: bool


@dataclass(frozen=True)
class CoverageReport:
    cells: tuple[CoverageCell, ...]
    covered_probability: float
    uncovered_probability: float
    pattern: AnglePattern
    window: tuple[float, float]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("u_index,v_index,angle_deg,probability,covered\n")
        for c in self.cells:
            buf.write(
                f"{c.u_index},{c.v_index},{c.angle_deg:.6f},"
                f"{c.probability:.17g},{int(c.covered)}\n"
            )
        buf.write(
            f"summary,,,{self.covered_probability:.17g},"
            f"{self.uncovered_probability:.17g}\n"
        )
        return buf.getvalue()


def coverage(
    state: BipartiteState, pair: TriadPair, window: tuple[float, float] | PhiWindow
) -> CoverageReport:
    """Joint zero-zero probability of each of the 9 triad outcome cells,
    marked covered when the relative angle falls inside the phi window.

    Window bounds are treated as closed with a 1e-9 degree slack: the
    K = 11 geometry sits exactly on arccos(-1/3) and must not flip.
    """
    if isinstance(window, PhiWindow):
        lo, hi = window.phi_min_deg, window.phi_max_deg
    else:
        lo, hi = window
    cells = []
    covered = uncovered = 0.0
    for i, u in enumerate(pair.first):
        for j, v in enumerate(pair.second):
            ang = angle_between(u, v)
            p = joint_probability(
                state, ObservableEvent(1, u, 0), ObservableEvent(2, v, 0)
            )
            inside = lo - COVER_SLACK <= ang <= hi + COVER_SLACK
            cells.append(CoverageCell(i, j, ang, p, inside))
            if inside:
                covered += p
            else:
                uncovered += p
    pattern = AnglePattern(
        pair.angle(0, 0), pair.angle(1, 0), pair.angle(2, 0)
    )
    return CoverageReport(
        cells=tuple(cells),
        covered_probability=covered,
        uncovered_probability=uncovered,
        pattern=pattern,
        window=(lo, hi),
    )


def pattern_family(cos_phi1: float) -> list[AnglePattern]:
    """Valid patterns with the given cos(phi1), from the two solution
    branches of the constraint pair (and both orderings of phi2, phi3)."""
    out = []
    for p in (1.0 - cos_phi1, -1.0 - cos_phi1):
        disc = p * (p + 4.0 * cos_phi1)
        if disc < 0:
            continue
        r = math.sqrt(disc)
        for c2, c3 in (((p + r) / 2, (p - r) / 2), ((p - r) / 2, (p + r) / 2)):
            if abs(c2) > 1 or abs(c3) > 1:
                continue
            pat = AnglePattern(
                math.degrees(math.acos(np.clip(cos_phi1, -1, 1))),
                math.degrees(math.acos(np.clip(c2, -1, 1))),
                math.degrees(math.acos(np.clip(c3, -1, 1))),
            )
            if max(pat.residuals()) < PATTERN_TOL:
                out.append(pat)
    return out


def scan_patterns(
    state: BipartiteState,
    window: tuple[float, float] | PhiWindow,
    grid_resolution: int = 400,
    require_phi1_outside: bool = True,
) -> CoverageReport | None:
    """Best coverage over the one-parameter family of cyclic patterns.

    By default restricted, as in the geometrical argument, to patterns
    with phi2 and phi3 inside the window and phi1 outside; pass
    require_phi1_outside=False to scan the whole family (for windows wide
    enough to hold all nine angles). Sweeps cos(phi1) on a grid (>= 100
    points) and refines around the best point; returns None when no
    pattern qualifies.
    """
    if grid_resolution < 100:
        raise ValueError("grid_resolution must be >= 100")
    if isinstance(window, PhiWindow):
        lo, hi = window.phi_min_deg, window.phi_max_deg
    else:
        lo, hi = window

    def inside(angle_deg: float) -> bool:
        return lo - COVER_SLACK <= angle_deg <= hi + COVER_SLACK

    def covered_mass(pat: AnglePattern) -> float | None:
        """Each pattern angle owns three of the nine cells, each of
        probability cos^2/3."""
        flags = [inside(a) for a in (pat.phi1_deg, pat.phi2_deg, pat.phi3_deg)]
        if require_phi1_outside and not (flags[1] and flags[2] and not flags[0]):
            return None
        c = pat.cosines
        return float(sum(c[t] ** 2 for t in range(3) if flags[t]))

    def best_on(grid) -> tuple[float, AnglePattern | None]:
        top, arg = -1.0, None
        for c1 in grid:
            for pat in pattern_family(c1):
                cov = covered_mass(pat)
                if cov is not None and cov > top:
                    top, arg = cov, pat
        return top, arg

    grid = np.linspace(-1.0, 1.0, grid_resolution)
    top, arg = best_on(grid)
    if arg is None:
        return None
    # refine around the best grid point
    c_star = math.cos(math.radians(arg.phi1_deg))
    width = 2.0 / grid_resolution
    for _ in range(8):
        fine = np.linspace(c_star - width, c_star + width, 64)
        t, a = best_on(np.clip(fine, -1.0, 1.0))
        if a is not None and t >= top:
            top, arg = t, a
            c_star = math.cos(math.radians(arg.phi1_deg))
        width /= 16.0
    return coverage(state, build_triads(arg), (lo, hi))
