from dataclasses import dataclass, field
from typing import List, Optional, Dict, Any, Tuple, FrozenSet

import numpy as np

from common.tolerances import CERT_REL, MC_MIN_HITS


@dataclass
class AffineSpan:
    """An affine subspace: base point plus orthonormal direction rows (possibly none)."""
    base: np.ndarray
    directions: np.ndarray  # shape (m, n), rows orthonormal

    @property
    def dim(self) -> int:
        return int(self.directions.shape[0])


@dataclass
class Halfspace:
    """Constraint normal . x <= offset, with a unit normal."""
    normal: np.ndarray
    offset: float


@dataclass
class Face:
    """A face of a polytope, identified by the set of vertices it contains."""
    id: int
    active: Tuple[int, ...]
    codim: int
    span: AffineSpan
    vertex_ids: FrozenSet[int]


@dataclass(eq=False)
class Polytope:
    """
    A bounded polytope in H-representation with the origin strictly inside.
    Vertices, the face lattice and the affine feet of every face are filled at
    construction time and never change afterwards.
    """
    dim: int
    normals: np.ndarray  # shape (m, n), unit rows
    offsets: np.ndarray  # shape (m,)
    vertices: np.ndarray  # shape (V, n), lexicographic order
    faces: List[Face] = field(default_factory=list)
    # face id -> ids of faces one codimension deeper that it contains
    children: Dict[int, List[int]] = field(default_factory=dict)
    # closest point of aff F to the origin, per face id
    affine_feet: Optional[np.ndarray] = None
    # whether that foot lies in F itself
    foot_inside: Optional[np.ndarray] = None

    @property
    def halfspaces(self) -> List[Halfspace]:
        return [Halfspace(normal=a.copy(), offset=float(b)) for a, b in zip(self.normals, self.offsets)]

    @property
    def circumradius(self) -> float:
        return float(np.max(np.linalg.norm(self.vertices, axis=1)))

    def faces_of_codim(self, k: int) -> List[Face]:
        return [f for f in self.faces if f.codim == k]


@dataclass
class Flag:
    """A maximal chain P = F_0 > F_1 > ... > F_n, stored as face ids indexed by codimension."""
    faces: Tuple[int, ...]


@dataclass
class SimplexTriple:
    """One flag's anchor simplices: A from closest points of faces, B from closest points of their spans."""
    flag: Flag
    a: np.ndarray  # shape (n+1, n)
    b: np.ndarray  # shape (n+1, n)
    degenerate: bool
    volume: float = 0.0


@dataclass
class Orthoscheme:
    """Simplex p_0 = 0, p_1, ..., p_n whose edge chain p_{k-1} p_k is pairwise orthogonal."""
    vertices: np.ndarray  # shape (n+1, n)
    edge_lengths: np.ndarray  # shape (n,)

    @property
    def dim(self) -> int:
        return int(self.vertices.shape[1])


@dataclass
class SphericalTriangleSpec:
    """Right spherical triangle with legs t = |s1 s2| and c = |s2 s3| meeting at s2."""
    t: float
    c: float

    @property
    def q(self) -> float:
        return float(np.tan(self.c))


@dataclass
class Estimate:
    """A measured quantity; Monte Carlo results carry their standard error and seed."""
    value: float
    standard_error: float = 0.0
    sample_count: int = 0
    seed: Optional[int] = None
    exact: bool = True
    # Monte Carlo hit count behind the value
    hits: Optional[int] = None

    @property
    def resolved(self) -> bool:
        return self.exact or (self.hits is not None and self.hits >= MC_MIN_HITS)


@dataclass
class CoveringReport:
    volume_gap: float
    max_overlap_hits: int
    uncovered_hits: int
    tested_points: int
    sample_count: int
    seed: int
    passed: bool


@dataclass
class HypothesisEntry:
    face: int
    codim: int
    distance: float
    threshold: float
    margin: float


@dataclass
class HypothesisReport:
    mode: str
    entries: List[HypothesisEntry]
    passed: bool

    @property
    def min_margin(self) -> float:
        return min((e.margin for e in self.entries), default=float('inf'))


@dataclass
class LedgerEntry:
    """One simplex row of a certificate."""
    flag: int
    volume: float
    omega: float
    bound: float
    margin: float
    degenerate: bool = False
    omega_error: float = 0.0
    facet_area: Optional[float] = None
    # vol_{n-1} of the opposite facet over vol, for A and for B
    facet_ratio_a: Optional[float] = None
    facet_ratio_b: Optional[float] = None


@dataclass
class Certificate:
    kind: str  # "volume", "surface" or "surface-experimental"
    mode: str
    dim: int
    claimed_bound: float
    total: float
    passed: Optional[bool]
    hypothesis: HypothesisReport
    simplices: List[LedgerEntry]
    omega_sum: float
    checks: Dict[str, Any] = field(default_factory=dict)

    @property
    def eps_cert(self) -> float:
        return CERT_REL * self.claimed_bound

    @property
    def min_margin(self) -> float:
        return min((s.margin for s in self.simplices if not s.degenerate), default=float('inf'))


@dataclass
class ContractionReport:
    status: str  # "ok", "violations" or "precondition_unmet"
    sample_count: int
    violations: int
    max_excess: float
    vertex_ok: bool
    passed: bool


@dataclass
class StepwiseReport:
    steps: int
    moved_steps: int
    sample_count: int
    violations: int
    max_increase: float
    max_orthogonality_error: float
    passed: bool


@dataclass
class CircleMoveReport:
    dim: int
    t_before: float
    t_after: float
    ratio_before: float
    ratio_after: float
    passed: bool
    # planar case only: sin t / t at both angles
    sin_over_t: Optional[Tuple[float, float]] = None


@dataclass
class MonotonicityReport:
    c: Optional[float]  # None for the planar sin t / t check
    t_grid: List[float]
    ratios: List[float]
    min_difference: float
    passed: bool


@dataclass
class VolumeRatioEntry:
    radius: float
    ratio_b: float
    ratio_c: float
    sigma: float
    passed: bool
    # ok, violation, or inconclusive when a side has too few hits to decide
    status: str = "ok"


@dataclass
class RunConfig:
    """Everything a CLI command needs, parsed once from argv."""
    command: str
    input_path: Optional[str] = None
    mode: str = "vaaler"
    seed: int = 0
    # None leaves each command on its configured default
    samples: Optional[int] = None
    output_path: Optional[str] = None
    format: str = "text"
    options: Dict[str, Any] = field(default_factory=dict)
