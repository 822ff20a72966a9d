"""Spin-1 ladder nonlocality toolkit.

Builds ladder direction tables for a pair of spin-1 particles in the
singlet state, verifies the chain of perfect correlations behind the
all-or-nothing nonlocality argument, and cross-checks it against
local-hidden-variable models by exhaustive enumeration.
"""

from .errors import (
    DegenerateAngle,
    DimensionMismatch,
    IncompatibleGivens,
    InconsistentPattern,
    InfeasiblePhi,
    NonOrthogonal,
    NotMaximallyEntangled,
    OutOfRangeTheta,
    Spin1LadderError,
    TooManyObservables,
    UnverifiedTable,
    ZeroConditioningProbability,
)
from .ladder import (
    DirectionTable,
    LadderSpec,
    PhiWindow,
    VerificationReport,
    ladder_table,
    max_p4,
    optimal_theta_profile,
    phi_window,
    solve_exclusion,
    stepladder_table,
    verify_ladder,
)
from .lhv import (
    ContradictionCertificate,
    InferenceGraph,
    enumerate_assignments,
    forward_chain,
    graph_from_table,
    qubit_ladder_graph,
    replay,
)
from .qubit import QubitLadderConfig, QubitLadderResult, evaluate, ladder_settings, optimize
from .spin import Direction3, SpinRep, spin_operators, squared_projectors, triad_complete
from .states import (
    BipartiteState,
    ObservableEvent,
    conditional_probability,
    joint_probability,
    maximally_entangled_spin1,
    partner_direction,
    schmidt,
    singlet_spin1,
)
from .triads import (
    AnglePattern,
    CoverageReport,
    TriadPair,
    build_triads,
    coverage,
    pattern_sec3,
    pattern_sec4,
    scan_patterns,
)

__version__ = "0.1.0"
