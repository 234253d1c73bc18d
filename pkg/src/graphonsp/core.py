"""Core value types: graphs, step graphons, analytic graphon families, signals.

All objects are immutable after construction and safe to share across
threads.  Step graphons live on a uniform grid over ``[0, t]^2`` and carry
exact 1- and 2-norms; the analytic families carry closed-form norms and
pointwise evaluation so that discretization error never enters silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .errors import (
    EmptyGraphError,
    IsolatedVertexError,
    StepRequiredError,
    SupportMismatchError,
    ZeroGraphonError,
)

__all__ = [
    "Graph",
    "StepGraphon",
    "SignedStepGraphon",
    "ConstantBox",
    "RankOneExp",
    "CelebrityLimit",
    "GraphonSpec",
    "StepSignal",
    "StretchTag",
    "canonical_graphon",
    "normalized_graphon",
    "stretch",
    "unstretch_step",
    "stretch_signal",
    "restrict",
    "as_step",
    "l1_restricted",
    "step_difference",
    "l1_distance",
    "common_grid",
    "read_edge_list",
    "write_edge_list",
]

# Largest grid accepted when building an exact common refinement (dense k x k).
_MAX_REFINE_CELLS = 4096


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

class Graph:
    """Sparse undirected simple graph.

    Edges are stored as a deduplicated ``(m, 2)`` integer array with
    ``i < j`` per row, sorted lexicographically.  Construction accepts any
    iterable of vertex pairs (either orientation) or such an array.
    """

    __slots__ = ("n", "edge_array")

    def __init__(self, n: int, edges: Union[Iterable, np.ndarray]):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be pairs of vertex indices")
        if arr.size:
            lo = np.minimum(arr[:, 0], arr[:, 1])
            hi = np.maximum(arr[:, 0], arr[:, 1])
            if np.any(lo == hi):
                raise ValueError("self-loops are not allowed")
            if lo.min() < 0 or hi.max() >= n:
                raise ValueError("edge endpoint out of range")
            arr = np.column_stack([lo, hi])
            d0 = np.diff(arr[:, 0])
            if arr.shape[0] > 1 and not np.all(
                    (d0 > 0) | ((d0 == 0) & (np.diff(arr[:, 1]) > 0))):
                # not already in strict lexicographic order: sort + dedupe
                arr = np.unique(arr, axis=0)
        self.n = n
        self.edge_array = arr
        self.edge_array.setflags(write=False)

    @property
    def edges(self) -> set:
        """Edge set as unordered pairs ``(i, j)`` with ``i < j``."""
        return {(int(i), int(j)) for i, j in self.edge_array}

    @property
    def edge_count(self) -> int:
        return self.edge_array.shape[0]

    @property
    def edge_density(self) -> float:
        """|E| / n^2, the sparsity measure driving the whole theory."""
        if self.n == 0:
            return 0.0
        return self.edge_count / self.n**2

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        if self.edge_count:
            np.add.at(d, self.edge_array[:, 0], 1)
            np.add.at(d, self.edge_array[:, 1], 1)
        return d

    def adjacency(self, sparse: bool = True):
        """Adjacency matrix, CSR by default."""
        import scipy.sparse as sp

        m = self.edge_count
        if sparse:
            r = np.concatenate([self.edge_array[:, 0], self.edge_array[:, 1]])
            c = np.concatenate([self.edge_array[:, 1], self.edge_array[:, 0]])
            return sp.csr_matrix((np.ones(2 * m), (r, c)), shape=(self.n, self.n))
        a = np.zeros((self.n, self.n))
        if m:
            a[self.edge_array[:, 0], self.edge_array[:, 1]] = 1.0
            a[self.edge_array[:, 1], self.edge_array[:, 0]] = 1.0
        return a

    def induced_subgraph(self, vertices: np.ndarray) -> tuple["Graph", np.ndarray]:
        """Induced subgraph on ``vertices``.

        Returns the relabeled graph together with the array of original
        vertex ids, ordered so that new index ``i`` is ``kept[i]``.
        """
        kept = np.unique(np.asarray(vertices, dtype=np.int64))
        if kept.size and (kept[0] < 0 or kept[-1] >= self.n):
            raise ValueError("vertex id out of range")
        lookup = np.full(self.n, -1, dtype=np.int64)
        lookup[kept] = np.arange(kept.size)
        e = self.edge_array
        if e.size:
            mask = (lookup[e[:, 0]] >= 0) & (lookup[e[:, 1]] >= 0)
            sub_edges = np.column_stack([lookup[e[mask, 0]], lookup[e[mask, 1]]])
        else:
            sub_edges = np.zeros((0, 2), dtype=np.int64)
        return Graph(kept.size, sub_edges), kept

    def drop_isolated(self) -> tuple["Graph", np.ndarray]:
        """Remove isolated vertices; returns (graph, original ids kept)."""
        keep = np.nonzero(self.degrees() > 0)[0]
        return self.induced_subgraph(keep)

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.edge_array, other.edge_array))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


# ---------------------------------------------------------------------------
# step graphons
# ---------------------------------------------------------------------------

class _StepBase:
    __slots__ = ("k", "t", "values", "value_bound")

    def __init__(self, values: np.ndarray, t: float, value_bound: float):
        values = np.ascontiguousarray(np.asarray(values, dtype=np.float64))
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError("values must be a square matrix")
        if not np.array_equal(values, values.T):
            raise ValueError("values must be symmetric")
        if not (t > 0):
            raise ValueError("support length t must be positive")
        self.k = values.shape[0]
        self.t = float(t)
        self.values = values
        self.values.setflags(write=False)
        self.value_bound = float(value_bound)
        self._check_bound()

    def _check_bound(self):
        raise NotImplementedError

    @property
    def cell_width(self) -> float:
        return self.t / self.k

    @property
    def l1_norm(self) -> float:
        return self.cell_width**2 * float(np.abs(self.values).sum())

    @property
    def l2_norm(self) -> float:
        return self.cell_width * math.sqrt(float((self.values**2).sum()))

    @property
    def support_length(self) -> float:
        return self.t

    def eval(self, x, y):
        """Pointwise evaluation; zero outside ``[0, t]^2``."""
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        inside = (x >= 0) & (x <= self.t) & (y >= 0) & (y <= self.t)
        i = np.clip((x / self.cell_width).astype(np.int64), 0, self.k - 1)
        j = np.clip((y / self.cell_width).astype(np.int64), 0, self.k - 1)
        out = np.where(inside, self.values[i, j], 0.0)
        return out if out.ndim else float(out)

    def __repr__(self):
        return f"{type(self).__name__}(k={self.k}, t={self.t!r})"


class StepGraphon(_StepBase):
    """Piecewise-constant symmetric nonnegative function on ``[0, t]^2``."""

    def _check_bound(self):
        if self.values.size and self.values.min() < 0:
            raise ValueError("step graphon values must be nonnegative")
        if self.values.size and self.values.max() > self.value_bound:
            raise ValueError("value exceeds the stated bound")


class SignedStepGraphon(_StepBase):
    """Step graphon allowed to take negative values (differences W1 - W2)."""

    def _check_bound(self):
        if self.values.size and np.abs(self.values).max() > self.value_bound:
            raise ValueError("absolute value exceeds the stated bound")


# ---------------------------------------------------------------------------
# analytic families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantBox:
    """``p`` on ``[0, s]^2`` and zero elsewhere."""

    p: float
    s: float

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("p must lie in [0, 1]")
        if not (self.s > 0):
            raise ValueError("side length must be positive")

    @property
    def l1_norm(self) -> float:
        return self.p * self.s**2

    @property
    def l2_norm(self) -> float:
        return self.p * self.s

    @property
    def value_bound(self) -> float:
        return self.p

    @property
    def support_length(self) -> float:
        return self.s

    def eval(self, x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        out = np.where((x >= 0) & (x <= self.s) & (y >= 0) & (y <= self.s), self.p, 0.0)
        return out if out.ndim else float(out)

    def l1_restricted(self, t_m: float) -> float:
        return self.p * min(self.s, t_m) ** 2


@dataclass(frozen=True)
class RankOneExp:
    """Separable exponential kernel ``g(x) g(y)`` with ``g(x) = c exp(-lam x)``.

    Closed forms: 1-norm ``(c / lam)^2``, 2-norm ``c^2 / (2 lam)``.
    """

    c: float
    lam: float

    def __post_init__(self):
        if not (self.c > 0 and self.lam > 0):
            raise ValueError("amplitude and decay rate must be positive")

    @property
    def l1_norm(self) -> float:
        return (self.c / self.lam) ** 2

    @property
    def l2_norm(self) -> float:
        return self.c**2 / (2.0 * self.lam)

    @property
    def value_bound(self) -> float:
        return self.c**2

    @property
    def support_length(self) -> float:
        return math.inf

    def profile(self, x):
        """The factor ``g(x) = c exp(-lam x)``."""
        return self.c * np.exp(-self.lam * np.asarray(x, dtype=np.float64))

    def eval(self, x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        out = np.where((x >= 0) & (y >= 0), self.profile(x) * self.profile(y), 0.0)
        return out if out.ndim else float(out)

    def l1_restricted(self, t_m: float) -> float:
        return (self.c * (1.0 - math.exp(-self.lam * t_m)) / self.lam) ** 2


@dataclass(frozen=True)
class CelebrityLimit:
    """Indicator of the unit square, the limit of dense-core sequences."""

    @property
    def l1_norm(self) -> float:
        return 1.0

    @property
    def l2_norm(self) -> float:
        return 1.0

    @property
    def value_bound(self) -> float:
        return 1.0

    @property
    def support_length(self) -> float:
        return 1.0

    def eval(self, x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        out = np.where((x >= 0) & (x <= 1) & (y >= 0) & (y <= 1), 1.0, 0.0)
        return out if out.ndim else float(out)

    def l1_restricted(self, t_m: float) -> float:
        return min(1.0, t_m) ** 2


GraphonSpec = Union[StepGraphon, ConstantBox, RankOneExp, CelebrityLimit]


def l1_restricted(w: GraphonSpec, t_m: float) -> float:
    """1-norm of ``W`` restricted to ``[0, t_m]^2`` (exact for every variant)."""
    if not (t_m > 0):
        raise ValueError("t_m must be positive")
    if isinstance(w, _StepBase):
        if t_m >= w.t:
            return w.l1_norm
        h = w.cell_width
        v = np.abs(w.values)
        full = int(t_m / h)
        fw = t_m - full * h  # width of the partially covered strip
        total = h * h * float(v[:full, :full].sum())
        if fw > 0 and full < w.k:
            total += 2.0 * h * fw * float(v[:full, full].sum())
            total += fw * fw * float(v[full, full])
        return total
    return w.l1_restricted(t_m)


# ---------------------------------------------------------------------------
# signals
# ---------------------------------------------------------------------------

class StepSignal:
    """Piecewise-constant function on ``[0, t]`` with ``k`` equal steps."""

    __slots__ = ("k", "t", "values", "bound")

    def __init__(self, values: np.ndarray, t: float, bound: float | None = None):
        values = np.ascontiguousarray(np.asarray(values, dtype=np.float64))
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a nonempty vector")
        if not (t > 0):
            raise ValueError("support length t must be positive")
        if bound is None:
            bound = float(np.abs(values).max())
        elif np.abs(values).max() > bound:
            raise ValueError("signal value exceeds the stated bound")
        self.k = values.size
        self.t = float(t)
        self.values = values
        self.values.setflags(write=False)
        self.bound = float(bound)

    @property
    def cell_width(self) -> float:
        return self.t / self.k

    @property
    def l1_norm(self) -> float:
        return self.cell_width * float(np.abs(self.values).sum())

    @property
    def l2_norm(self) -> float:
        return math.sqrt(self.cell_width * float((self.values**2).sum()))

    def eval(self, x):
        x = np.asarray(x, dtype=np.float64)
        inside = (x >= 0) & (x <= self.t)
        i = np.clip((x / self.cell_width).astype(np.int64), 0, self.k - 1)
        out = np.where(inside, self.values[i], 0.0)
        return out if out.ndim else float(out)

    def edges(self) -> np.ndarray:
        """Cell boundary positions, length ``k + 1``."""
        return np.arange(self.k + 1) * self.cell_width

    def __repr__(self):
        return f"StepSignal(k={self.k}, t={self.t!r})"


# ---------------------------------------------------------------------------
# stretch
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StretchTag:
    """Record of a stretch: factor ``r`` plus the original support length.

    Keeping the original support lets ``unstretch_step`` undo the rescale
    bit-exactly, which a floating-point multiply by ``r`` cannot guarantee.
    """

    factor: float
    original_support: float | None = None

    def __post_init__(self):
        if not (self.factor > 0):
            raise ValueError("stretch factor must be positive")


def stretch(w: GraphonSpec) -> tuple[GraphonSpec, StretchTag]:
    """Stretch ``W`` by ``r = sqrt(||W||_1)`` so the result has unit 1-norm.

    The domain rescales ``W^s(x, y) = W(r x, r y)``; values are untouched.
    """
    l1 = w.l1_norm
    if l1 <= 0.0:
        raise ZeroGraphonError("cannot stretch a graphon with zero 1-norm")
    r = math.sqrt(l1)
    if isinstance(w, StepGraphon):
        return StepGraphon(w.values, w.t / r, w.value_bound), StretchTag(r, w.t)
    if isinstance(w, SignedStepGraphon):
        return SignedStepGraphon(w.values, w.t / r, w.value_bound), StretchTag(r, w.t)
    if isinstance(w, ConstantBox):
        return ConstantBox(w.p, w.s / r), StretchTag(r, w.s)
    if isinstance(w, RankOneExp):
        # g(r x) = c exp(-(lam r) x): same family, faster decay.
        return RankOneExp(w.c, w.lam * r), StretchTag(r, None)
    if isinstance(w, CelebrityLimit):
        return w, StretchTag(1.0, 1.0)
    raise TypeError(f"not a graphon spec: {type(w).__name__}")


def unstretch_step(w: _StepBase, tag: StretchTag) -> _StepBase:
    """Undo a stretch on a step graphon, restoring the original support."""
    if tag.original_support is None:
        raise ValueError("tag does not record the original support")
    return type(w)(w.values, tag.original_support, w.value_bound)


def stretch_signal(f: StepSignal, r: float) -> StepSignal:
    """Rescale the domain of ``f`` by ``r``: ``f^r(x) = f(r x)``."""
    if not (r > 0):
        raise ValueError("stretch factor must be positive")
    return StepSignal(f.values, f.t / r, f.bound)


# ---------------------------------------------------------------------------
# canonical constructions
# ---------------------------------------------------------------------------

def canonical_graphon(g: Graph) -> StepGraphon:
    """Step-function embedding of the adjacency structure into ``[0, 1]^2``.

    Its 1-norm is ``2 |E| / n^2``, twice the edge density.
    """
    if g.n == 0:
        raise EmptyGraphError("canonical graphon of the empty graph is undefined")
    values = np.zeros((g.n, g.n))
    e = g.edge_array
    if e.size:
        values[e[:, 0], e[:, 1]] = 1.0
        values[e[:, 1], e[:, 0]] = 1.0
    return StepGraphon(values, 1.0, 1.0)


def normalized_graphon(g: Graph) -> StepGraphon:
    """Degree-normalized embedding: ``1 / (d_i d_j)`` on edge cells."""
    if g.n == 0:
        raise EmptyGraphError("normalized graphon of the empty graph is undefined")
    d = g.degrees()
    bad = np.nonzero(d == 0)[0]
    if bad.size:
        raise IsolatedVertexError(f"vertex {int(bad[0])} is isolated")
    values = np.zeros((g.n, g.n))
    e = g.edge_array
    if e.size:
        w = 1.0 / (d[e[:, 0]] * d[e[:, 1]])
        values[e[:, 0], e[:, 1]] = w
        values[e[:, 1], e[:, 0]] = w
    return StepGraphon(values, 1.0, 1.0)


# ---------------------------------------------------------------------------
# restriction / discretization
# ---------------------------------------------------------------------------

def _rational_ratio(num: float, den: float, max_den: int) -> Fraction | None:
    """Fraction p/q ~= num/den when that ratio is (near-)rational, else None."""
    ratio = num / den
    frac = Fraction(ratio).limit_denominator(max_den)
    if frac.numerator <= 0:
        return None
    if abs(ratio - float(frac)) <= 1e-9 * max(1.0, ratio):
        return frac
    return None


def restrict(w: GraphonSpec, t_m: float, resolution: int | None = None) -> StepGraphon:
    """Restrict ``W`` to ``[0, t_m]^2`` and rescale onto ``[0, 1]^2``.

    For step inputs whose grid is commensurable with ``t_m`` the result is an
    exact sub-grid extraction; analytic inputs (and incommensurable step
    inputs) are midpoint-sampled on a ``resolution``-cell grid, which must
    then be supplied explicitly.
    """
    if not (t_m > 0):
        raise ValueError("t_m must be positive")
    if isinstance(w, _StepBase):
        frac = _rational_ratio(t_m, w.cell_width, 4096)
        if frac is not None and frac.numerator <= _MAX_REFINE_CELLS:
            k_new = frac.numerator  # cell width t_m / p equals cell_width / q
            mids = (np.arange(k_new) + 0.5) * (t_m / k_new)
            src = np.floor(mids / w.cell_width).astype(np.int64)
            inside = (mids <= w.t) & (src < w.k)
            vals = np.zeros((k_new, k_new))
            ii = np.nonzero(inside)[0]
            if ii.size:
                vals[np.ix_(ii, ii)] = w.values[np.ix_(src[ii], src[ii])]
            return StepGraphon(vals, 1.0, w.value_bound)
        # fall through to midpoint sampling
    if resolution is None:
        raise ValueError("a discretization resolution is required for this input")
    if resolution < 1:
        raise ValueError("resolution must be at least 1")
    mids = (np.arange(resolution) + 0.5) * (t_m / resolution)
    vals = w.eval(mids[:, None], mids[None, :])
    return StepGraphon(vals, 1.0, w.value_bound)


def as_step(w: GraphonSpec, resolution: int | None = None,
            support: float | None = None) -> StepGraphon:
    """Exact step representation where one exists, else a midpoint sample.

    ``ConstantBox`` and ``CelebrityLimit`` convert exactly (one cell);
    ``RankOneExp`` needs ``resolution`` and a support cutoff (default
    ``40 / lam``, beyond which the mass is far below double precision).
    """
    if isinstance(w, StepGraphon):
        return w
    if isinstance(w, SignedStepGraphon):
        raise TypeError("signed step graphons are already step representations")
    if isinstance(w, ConstantBox):
        return StepGraphon(np.array([[w.p]]), w.s, w.p if w.p > 0 else 1.0)
    if isinstance(w, CelebrityLimit):
        return StepGraphon(np.array([[1.0]]), 1.0, 1.0)
    if isinstance(w, RankOneExp):
        if resolution is None:
            raise StepRequiredError(
                "RankOneExp has no exact step form; pass a resolution")
        t_cut = support if support is not None else 40.0 / w.lam
        mids = (np.arange(resolution) + 0.5) * (t_cut / resolution)
        g = w.profile(mids)
        return StepGraphon(np.outer(g, g), t_cut, w.value_bound)
    raise TypeError(f"not a graphon spec: {type(w).__name__}")


# ---------------------------------------------------------------------------
# exact arithmetic on pairs of step graphons
# ---------------------------------------------------------------------------

def common_grid(a: _StepBase, b: _StepBase):
    """Exact common (possibly nonuniform) grid for two step graphons.

    Returns ``(widths, va, vb)``: cell widths of the union grid covering
    ``[0, max(ta, tb)]`` and both value matrices looked up on it.  This is
    exact for arbitrary supports; no resampling occurs.
    """
    T = max(a.t, b.t)
    bp = np.concatenate([
        np.arange(a.k + 1) * a.cell_width,
        np.arange(b.k + 1) * b.cell_width,
        [T],
    ])
    bp = np.unique(bp)
    # merge breakpoints closer than float noise so widths stay positive
    keep = np.concatenate([[True], np.diff(bp) > 1e-12 * max(1.0, T)])
    bp = bp[keep]
    if bp[-1] < T:
        bp = np.append(bp, T)
    widths = np.diff(bp)
    mids = (bp[:-1] + bp[1:]) / 2.0

    def lookup(w: _StepBase) -> np.ndarray:
        idx = np.floor(mids / w.cell_width).astype(np.int64)
        ok = (mids <= w.t) & (idx < w.k)
        out = np.zeros((mids.size, mids.size))
        ii = np.nonzero(ok)[0]
        if ii.size:
            out[np.ix_(ii, ii)] = w.values[np.ix_(idx[ii], idx[ii])]
        return out

    return widths, lookup(a), lookup(b)


def step_difference(a: _StepBase, b: _StepBase,
                    resolution: int | None = None) -> SignedStepGraphon:
    """Difference ``a - b`` as a signed step graphon on a uniform grid.

    Exact when the two grids share a rational common refinement; otherwise
    midpoint-resampled at ``resolution`` cells (which must be supplied).
    """
    T = max(a.t, b.t)
    frac = _rational_ratio(a.cell_width, b.cell_width, 4096)
    if frac is not None:
        width = a.cell_width / frac.numerator  # == b.cell_width / frac.denominator
        k_new = int(round(T / width))
        if k_new <= _MAX_REFINE_CELLS and abs(k_new * width - T) <= 1e-9 * T:
            mids = (np.arange(k_new) + 0.5) * (T / k_new)
            va = _lookup_square(a, mids)
            vb = _lookup_square(b, mids)
            bound = a.value_bound + b.value_bound
            return SignedStepGraphon(va - vb, T, bound if bound > 0 else 1.0)
    if resolution is None:
        raise SupportMismatchError(
            "grids share no rational refinement; pass a resolution to resample")
    mids = (np.arange(resolution) + 0.5) * (T / resolution)
    va = _lookup_square(a, mids)
    vb = _lookup_square(b, mids)
    bound = a.value_bound + b.value_bound
    return SignedStepGraphon(va - vb, T, bound if bound > 0 else 1.0)


def _lookup_square(w: _StepBase, mids: np.ndarray) -> np.ndarray:
    idx = np.floor(mids / w.cell_width).astype(np.int64)
    ok = (mids <= w.t) & (idx < w.k)
    out = np.zeros((mids.size, mids.size))
    ii = np.nonzero(ok)[0]
    if ii.size:
        out[np.ix_(ii, ii)] = w.values[np.ix_(idx[ii], idx[ii])]
    return out


def l1_distance(a: _StepBase, b: _StepBase) -> float:
    """Exact ``||a - b||_1`` for two step graphons on arbitrary grids."""
    widths, va, vb = common_grid(a, b)
    return float(widths @ np.abs(va - vb) @ widths)


# ---------------------------------------------------------------------------
# edge-list files
# ---------------------------------------------------------------------------

def read_edge_list(path) -> Graph:
    """Read a whitespace-separated edge list.

    Lines starting with ``#`` are ignored.  A header line ``n <count>``
    fixes the vertex count; otherwise it is ``max id + 1``.  Duplicate and
    reversed edges are deduplicated.
    """
    path = Path(path)
    n_header = None
    pairs = []
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if parts[0] == "n" and len(parts) == 2 and n_header is None and not pairs:
                n_header = int(parts[1])
                continue
            if len(parts) != 2:
                raise ValueError(f"malformed edge line: {s!r}")
            pairs.append((int(parts[0]), int(parts[1])))
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if n_header is not None:
        n = n_header
    else:
        n = int(arr.max()) + 1 if arr.size else 0
    return Graph(n, arr)


def write_edge_list(g: Graph, path) -> None:
    """Write a graph in the edge-list format, with an ``n`` header line."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"n {g.n}\n")
        for i, j in g.edge_array:
            fh.write(f"{int(i)} {int(j)}\n")
