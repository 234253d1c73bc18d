"""Samplers: double graph sequences, sparse subsequence extraction, signal
sampling, and the subgraph-growth procedure for real graphs.

Sample points are sorted ascending before edges are drawn so that canonical
graphons of samples converge without unknown relabelings; all randomness
flows through counter-based sub-streams keyed per grid cell, making every
cell individually reproducible and order-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import core
from .core import Graph, GraphonSpec, StepGraphon, StepSignal, canonical_graphon
from .cutmetric import stretched_cut_distance
from .errors import ProbabilityRangeError, ScheduleError
from .rng import derive_key, substream

__all__ = [
    "SamplePoints",
    "SampledGraph",
    "GrowthSchedule",
    "GrowthStep",
    "SparseSubsequenceSpec",
    "sample_graph",
    "sample_double_sequence",
    "extract_sparse_subsequence",
    "sample_signal",
    "grow_subgraphs",
    "pair_density",
    "dense_core_graph",
    "core_periphery_graph",
]


@dataclass(frozen=True, eq=False)
class SamplePoints:
    """Sorted sample locations in ``[0, t_m]`` for one grid cell."""

    m_index: int
    t_m: float
    xs: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.float64)
        if xs.ndim != 1 or xs.size == 0:
            raise ValueError("xs must be a nonempty vector")
        if np.any(np.diff(xs) < 0):
            raise ValueError("sample points must be sorted ascending")
        if xs[0] < 0 or xs[-1] > self.t_m:
            raise ValueError("sample points outside [0, t_m]")
        object.__setattr__(self, "xs", xs)
        xs.setflags(write=False)

    @property
    def n(self) -> int:
        return self.xs.size


@dataclass(frozen=True)
class SampledGraph:
    graph: Graph
    points: SamplePoints
    seed: int

    def canonical(self) -> StepGraphon:
        return canonical_graphon(self.graph)


@dataclass(frozen=True)
class GrowthSchedule:
    """Nodes added per step, number of steps, isolated-vertex removal."""

    batch: int
    steps: int
    drop_isolated: bool = True

    def __post_init__(self):
        if self.batch < 1 or self.steps < 1:
            raise ScheduleError("batch and steps must be at least 1")


@dataclass(frozen=True, eq=False)
class GrowthStep:
    """One induced subgraph, with original vertex ids for signal transfer."""

    graph: Graph
    vertices: np.ndarray  # original id of each (renumbered) vertex


@dataclass
class SparseSubsequenceSpec:
    """Index map m -> phi(m) with per-row diagnostics and explicit gaps."""

    phi: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)   # (m, t_m, n, density, target, distance)
    gaps: list = field(default_factory=list)   # (m, reason)


def pair_density(g: Graph) -> float:
    """``2 |E| / (n (n - 1))``: unbiased for the restricted-box mean.

    This is the density that the subsequence-extraction checks compare
    against the limit ``||W_m||_1 / t_m^2``; unlike ``2 |E| / n^2`` it carries no
    ``(n-1)/n`` finite-size bias.
    """
    if g.n < 2:
        return 0.0
    return 2.0 * g.edge_count / (g.n * (g.n - 1))


def sample_graph(w: GraphonSpec, t_m: float, n: int, seed: int,
                 m_index: int = 0) -> SampledGraph:
    """Draw ``n`` uniform points on ``[0, t_m]``, sort them, and connect
    ``(i, j)`` independently with probability ``W(x_i, x_j)``.

    Deterministic given the seed.  Raises if any probed value exceeds 1.
    """
    if n < 1:
        raise ValueError("need at least one sample point")
    if not (t_m > 0):
        raise ValueError("t_m must be positive")
    rng = substream(seed, 0x5A, m_index, n)
    xs = np.sort(rng.uniform(0.0, t_m, size=n))
    rows = []
    cols = []
    # rows are processed in blocks; the uniform stream is consumed in the
    # same row-major order regardless of the block size, so results are
    # independent of the chunking
    block = max(1, (1 << 22) // max(n, 1))
    for start in range(0, n - 1, block):
        stop = min(start + block, n - 1)
        idx = np.arange(start, stop)
        p = np.asarray(w.eval(xs[idx, None], xs[None, :]), dtype=np.float64)
        mask = np.arange(n)[None, :] > idx[:, None]   # strict upper triangle
        bad = (p > 1.0 + 1e-12) & mask
        if np.any(bad):
            bi, bj = np.argwhere(bad)[0]
            raise ProbabilityRangeError(
                f"W({xs[idx[bi]]!r}, {xs[bj]!r}) = {p[bi, bj]!r} exceeds 1")
        counts = n - 1 - idx
        p_flat = p[mask]                       # row-major: matches draw order
        draws = rng.random(p_flat.size)
        hits = draws < p_flat
        if np.any(hits):
            rows.append(np.repeat(idx, counts)[hits])
            cols.append(np.nonzero(mask)[1][hits])
    if rows:
        edges = np.column_stack([np.concatenate(rows), np.concatenate(cols)])
    else:
        edges = np.zeros((0, 2), dtype=np.int64)
    graph = Graph(n, edges)
    return SampledGraph(graph, SamplePoints(m_index, t_m, xs), seed)


def sample_double_sequence(w: GraphonSpec, t_schedule, n_schedule,
                           seed: int) -> list:
    """Sample ``G_{m,n}`` for every pair of the two schedules.

    Returns a list of rows (one per ``t_m``), each a list over ``n``.  Grid
    cells use independent derived sub-seeds, so any cell can be regenerated
    alone via its recorded seed.
    """
    t_schedule = [float(t) for t in t_schedule]
    n_schedule = [int(n) for n in n_schedule]
    if any(b <= a for a, b in zip(t_schedule, t_schedule[1:])):
        raise ScheduleError("t_schedule must be strictly increasing")
    grid = []
    for mi, t_m in enumerate(t_schedule):
        row = []
        for nj, n in enumerate(n_schedule):
            cell_seed = derive_key(seed, mi, nj)
            row.append(sample_graph(w, t_m, n, cell_seed, m_index=mi))
        grid.append(row)
    return grid


def extract_sparse_subsequence(grid, w: GraphonSpec, resolution: int = 256,
                               restarts: int = 16, seed: int = 0) -> SparseSubsequenceSpec:
    """Pick, per row ``m``, the smallest ``n`` meeting both closeness criteria.

    Criteria at tolerance ``1/m`` (1-based ``m``): the pair density is within
    ``1/m`` of ``||W_m||_1 / t_m^2``, and the heuristic stretched cut distance
    between the sample's canonical graphon and the restriction ``W_m`` is at
    most ``1/m``.  Rows with no qualifying ``n`` are reported as gaps.
    """
    if not grid or not grid[0]:
        raise ScheduleError("empty sampling grid")
    out = SparseSubsequenceSpec()
    for mi, row in enumerate(grid):
        m = mi + 1
        tol = 1.0 / m
        t_m = row[0].points.t_m
        target = core.l1_restricted(w, t_m) / t_m**2
        wm = core.restrict(w, t_m, resolution=resolution)
        found = False
        for cell in row:
            dens = pair_density(cell.graph)
            if abs(dens - target) > tol:
                continue
            if cell.graph.edge_count == 0:
                continue  # zero canonical graphon cannot be stretched
            dist = stretched_cut_distance(cell.canonical(), wm, mode="degree_sort",
                                          restarts=restarts, seed=seed).distance
            if dist <= tol:
                out.phi[m] = cell.points.n
                out.rows.append((m, t_m, cell.points.n, dens, target, dist))
                found = True
                break
        if not found:
            out.gaps.append((m, f"no grid entry within 1/{m} of density "
                                f"{target!r} and distance tolerance"))
    return out


def sample_signal(f, points: SamplePoints) -> StepSignal:
    """Canonical step function of a signal sampled at the given points.

    ``f`` may be a :class:`StepSignal` or any callable; the output lives on
    ``[0, 1]`` with ``n`` equal steps, step ``i`` carrying ``f(x_i)``.
    """
    xs = points.xs
    if np.any(np.diff(xs) < 0):
        raise ValueError("sample points must be sorted ascending")
    if isinstance(f, StepSignal):
        values = f.eval(xs)
        bound = f.bound
    else:
        values = np.asarray(f(xs), dtype=np.float64)
        bound = float(np.abs(values).max()) if values.size else 0.0
    return StepSignal(values, 1.0, max(bound, float(np.abs(values).max())))


def grow_subgraphs(g: Graph, schedule: GrowthSchedule, seed: int) -> list:
    """Grow nested vertex subsets by uniform batches and take induced subgraphs.

    Vertex subsets are nested before isolation removal; with
    ``drop_isolated`` every step removes isolated vertices and renumbers
    consecutively, returning the old ids in each :class:`GrowthStep`.
    """
    total = schedule.batch * schedule.steps
    if total > g.n:
        raise ScheduleError(
            f"schedule needs {total} vertices but the graph has {g.n}")
    rng = substream(seed, 0x60)
    order = rng.permutation(g.n)
    steps = []
    for s in range(schedule.steps):
        chosen = order[: schedule.batch * (s + 1)]
        sub, kept = g.induced_subgraph(chosen)
        if schedule.drop_isolated:
            sub2, kept_local = sub.drop_isolated()
            steps.append(GrowthStep(sub2, kept[kept_local]))
        else:
            steps.append(GrowthStep(sub, kept))
    return steps


def dense_core_graph(n: int, alpha: float) -> Graph:
    """Sparse benchmark graph: a clique on ``floor(n^((1+alpha)/2))``
    vertices, everything else isolated.

    The edge density decays like ``n^(alpha - 1)``, so the sequence is
    sparse for every ``alpha`` in ``(0, 1)`` while its stretched canonical
    graphon converges to the unit-square indicator.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be positive")
    k = int(math.floor(n ** ((1.0 + alpha) / 2.0)))
    k = max(k, 1)
    if k < 2:
        return Graph(n, np.zeros((0, 2), dtype=np.int64))
    iu = np.triu_indices(k, 1)
    return Graph(n, np.column_stack([iu[0], iu[1]]).astype(np.int64))


def core_periphery_graph(n: int, alpha: float, p: float, seed: int) -> Graph:
    """Dense-core variant with Bernoulli(p) core edges instead of a clique.

    A complete core has minimal polynomial of degree 2, which makes filter
    designs of higher degree exactly singular; the Bernoulli core keeps the
    same sparsity profile with a generic spectrum.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if not (0.0 < p <= 1.0):
        raise ValueError("p must lie in (0, 1]")
    k = max(1, int(math.floor(n ** ((1.0 + alpha) / 2.0))))
    if k < 2:
        return Graph(n, np.zeros((0, 2), dtype=np.int64))
    rng = substream(seed, 0xC0DE)
    iu = np.triu_indices(k, 1)
    keep = rng.random(iu[0].size) < p
    return Graph(n, np.column_stack([iu[0][keep], iu[1][keep]]).astype(np.int64))
