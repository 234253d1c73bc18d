"""Cut norm, cut distance over cell relabelings, and their stretched variants.

For step graphons the supremum over measurable rectangles reduces to a
maximum over unions of grid cells: the bilinear objective is linear in each
selector, so it attains its maximum at a vertex of the unit box.  Exact mode
enumerates row subsets (choosing the optimal column subset per row subset);
heuristic mode runs alternating maximization from random restarts and never
exceeds the exact value.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import (
    CelebrityLimit,
    ConstantBox,
    GraphonSpec,
    RankOneExp,
    SignedStepGraphon,
    StepGraphon,
    stretch,
)
from .errors import ResolutionTooLargeError, SupportMismatchError
from .rng import substream

__all__ = [
    "CutResult",
    "AlignmentResult",
    "cut_norm",
    "cut_distance_steps",
    "stretched_cut_distance",
]

EXACT_CUT_LIMIT = 22       # 2^k * k^2 stays near 1e9 elementary ops
EXACT_ALIGN_LIMIT = 8      # k! permutations


@dataclass(frozen=True)
class CutResult:
    """Cut-norm value with the rectangle (cell subsets) attaining it."""

    value: float
    witness_rows: tuple
    witness_cols: tuple
    exact: bool

    def recompute(self, w) -> float:
        """Re-evaluate the bilinear objective at the stored witnesses."""
        area = (w.t / w.k) ** 2
        return _evaluate(w.values, list(self.witness_rows),
                         list(self.witness_cols), area)


@dataclass(frozen=True)
class AlignmentResult:
    """Cut distance under the best relabeling found.

    ``permutation`` maps new index -> old index of the first argument; it is
    ``None`` when the comparison grid does not support cell permutations
    (nonuniform exact grids), in which case the identity alignment was used.
    """

    distance: float
    permutation: tuple | None
    exact: bool
    cut: CutResult


# ---------------------------------------------------------------------------
# bilinear maximization kernels (work on plain matrices, unit cell area)
# ---------------------------------------------------------------------------

def _subset_sums(rows: np.ndarray) -> np.ndarray:
    """All 2^m subset sums of the given rows, in bit order."""
    m, k = rows.shape
    out = np.zeros((1, k))
    for i in range(m):
        out = np.vstack([out, out + rows[i]])
    return out


def _bits(idx: int, m: int) -> list:
    return [i for i in range(m) if (idx >> i) & 1]


def _bilinear_max_exact(M: np.ndarray):
    """Maximize |sum_{i in S, j in T} M[i, j]| over all subset pairs.

    For each row subset the optimal column subset is the set of positive
    (or negative) column sums, so only row subsets are enumerated.  Rows are
    split in halves so subset sums are formed incrementally.
    """
    k = M.shape[0]
    ka = k // 2
    SA = _subset_sums(M[:ka])
    SB = _subset_sums(M[ka:])
    best = -1.0
    best_pos = True
    best_a = best_b = 0
    for b in range(SB.shape[0]):
        vals = SA + SB[b]
        pos = np.where(vals > 0.0, vals, 0.0).sum(axis=1)
        neg = np.where(vals < 0.0, vals, 0.0).sum(axis=1)
        ia = int(np.argmax(pos))
        ib = int(np.argmin(neg))
        if pos[ia] > best:
            best, best_pos, best_a, best_b = float(pos[ia]), True, ia, b
        if -neg[ib] > best:
            best, best_pos, best_a, best_b = float(-neg[ib]), False, ib, b
    rows = _bits(best_a, ka) + [ka + i for i in _bits(best_b, k - ka)]
    col_sums = M[rows].sum(axis=0) if rows else np.zeros(k)
    if best_pos:
        cols = [j for j in range(k) if col_sums[j] > 0.0]
    else:
        cols = [j for j in range(k) if col_sums[j] < 0.0]
    return rows, cols


def _bilinear_max_heuristic(M: np.ndarray, restarts: int, rng):
    """Alternating row/column maximization from random starts.

    Cells with exactly zero marginal contribution are excluded, which makes
    the iteration deterministic given the seed.
    """
    k = M.shape[0]
    best = -1.0
    best_rows: np.ndarray = np.zeros(k, dtype=bool)
    best_cols: np.ndarray = np.zeros(k, dtype=bool)
    for _ in range(max(1, restarts)):
        t0 = rng.random(k) < 0.5
        for sign in (1.0, -1.0):
            t = t0.copy()
            s = np.zeros(k, dtype=bool)
            for _ in range(100):
                s = sign * (M @ t) > 0.0
                t_new = sign * (M.T @ s) > 0.0
                if np.array_equal(t_new, t):
                    break
                t = t_new
            val = abs(float(s @ M @ t))
            if val > best:
                best = val
                best_rows, best_cols = s.copy(), t.copy()
    rows = [int(i) for i in np.nonzero(best_rows)[0]]
    cols = [int(j) for j in np.nonzero(best_cols)[0]]
    return rows, cols


def _evaluate(M: np.ndarray, rows, cols, area: float) -> float:
    """Canonical witness evaluation: selected entries summed in sorted order.

    On a symmetric kernel the pairs (S, T) and (T, S) select the same
    multiset of entries; sorting before summation makes the float result
    identical for both, so independent maximizers agree bit-for-bit.
    """
    if not rows or not cols:
        return 0.0
    sub = np.sort(M[np.ix_(rows, cols)], axis=None)
    return abs(area * float(sub.sum()))


def cut_norm(w, mode: str = "exact", restarts: int = 64, seed: int = 0) -> CutResult:
    """Cut norm of a (signed) step graphon.

    ``mode='exact'`` enumerates row subsets (``k <= 22``); ``mode='heuristic'``
    runs ``restarts`` alternating maximizations.  The returned value is always
    re-evaluated at the witness sets, so it is recomputable exactly.
    """
    M = w.values
    area = (w.t / w.k) ** 2
    if mode == "exact":
        if w.k > EXACT_CUT_LIMIT:
            raise ResolutionTooLargeError(
                f"exact cut norm is limited to k <= {EXACT_CUT_LIMIT}, got {w.k}")
        rows, cols = _bilinear_max_exact(M)
        exact = True
    elif mode == "heuristic":
        rng = substream(seed, 0xC07)
        rows, cols = _bilinear_max_heuristic(M, restarts, rng)
        exact = False
    else:
        raise ValueError(f"unknown mode {mode!r}")
    value = _evaluate(M, rows, cols, area)
    return CutResult(value, tuple(rows), tuple(cols), exact)


def _weighted_cut_norm(V: np.ndarray, widths: np.ndarray, mode: str,
                       restarts: int, seed: int) -> CutResult:
    """Cut norm of a step kernel on a nonuniform grid with given cell widths."""
    M = V * np.outer(widths, widths)
    if mode == "exact":
        if M.shape[0] > EXACT_CUT_LIMIT:
            raise ResolutionTooLargeError(
                f"exact cut norm is limited to k <= {EXACT_CUT_LIMIT}")
        rows, cols = _bilinear_max_exact(M)
        exact = True
    else:
        rng = substream(seed, 0xC07)
        rows, cols = _bilinear_max_heuristic(M, restarts, rng)
        exact = False
    value = _evaluate(M, rows, cols, 1.0)
    return CutResult(value, tuple(rows), tuple(cols), exact)


# ---------------------------------------------------------------------------
# cut distance between equal-support step graphons
# ---------------------------------------------------------------------------

def _refine_uniform(w, factor: int):
    if factor == 1:
        return w
    v = np.repeat(np.repeat(w.values, factor, axis=0), factor, axis=1)
    return type(w)(v, w.t, w.value_bound)


def _common_resolution(w1, w2):
    """Bring two equal-support step graphons onto one uniform grid."""
    if not math.isclose(w1.t, w2.t, rel_tol=1e-12, abs_tol=0.0):
        raise SupportMismatchError(
            f"supports differ: {w1.t!r} vs {w2.t!r}; refine or pad first")
    k = math.lcm(w1.k, w2.k)
    if k > core._MAX_REFINE_CELLS:
        raise ResolutionTooLargeError(f"common refinement needs {k} cells")
    return _refine_uniform(w1, k // w1.k), _refine_uniform(w2, k // w2.k)


def _permute(values: np.ndarray, perm) -> np.ndarray:
    p = np.asarray(perm)
    return values[np.ix_(p, p)]


def _degree_sort_perm(values: np.ndarray) -> np.ndarray:
    # stable sort on (-rowsum, index): deterministic tie handling
    return np.argsort(-values.sum(axis=1), kind="stable")


def cut_distance_steps(w1, w2, mode: str = "exact", iters: int = 2,
                       restarts: int = 64, seed: int = 0) -> AlignmentResult:
    """Cut distance between step graphons, minimized over cell relabelings.

    Modes: ``exact`` enumerates all ``k!`` permutations (``k <= 8``);
    ``degree_sort`` aligns cells by descending row sums; ``local_search``
    improves degree_sort with pairwise swaps for ``iters`` passes.  Every
    mode also evaluates the identity alignment, so the result never exceeds
    the unaligned cut norm.
    """
    a, b = _common_resolution(w1, w2)
    k = a.k
    bound = a.value_bound + b.value_bound

    def diff(perm):
        return SignedStepGraphon(_permute(a.values, perm) - b.values, a.t,
                                 bound if bound > 0 else 1.0)

    if mode == "exact":
        if k > EXACT_ALIGN_LIMIT:
            raise ResolutionTooLargeError(
                f"exact alignment is limited to k <= {EXACT_ALIGN_LIMIT}, got {k}")
        best = None
        for perm in itertools.permutations(range(k)):
            cut = cut_norm(diff(perm), mode="exact")
            if best is None or cut.value < best[0].value:
                best = (cut, perm)
        cut, perm = best
        return AlignmentResult(cut.value, tuple(perm), True, cut)

    if mode not in ("degree_sort", "local_search"):
        raise ValueError(f"unknown mode {mode!r}")

    cut_mode = "exact" if k <= EXACT_CUT_LIMIT else "heuristic"

    def score(perm):
        return cut_norm(diff(perm), mode=cut_mode, restarts=restarts, seed=seed)

    identity = np.arange(k)
    p1 = _degree_sort_perm(a.values)
    p2 = _degree_sort_perm(b.values)
    # align sorted orders: new frame is w2's; w1 cell order chased through w2's
    rank2 = np.empty(k, dtype=np.int64)
    rank2[p2] = np.arange(k)
    sorted_perm = p1[rank2]

    candidates = [(score(identity), identity), (score(sorted_perm), sorted_perm)]
    best_cut, best_perm = min(candidates, key=lambda cp: cp[0].value)

    if mode == "local_search":
        perm = best_perm.copy()
        current = best_cut
        for _ in range(max(1, iters)):
            improved = False
            for i in range(k - 1):
                for j in range(i + 1, k):
                    perm[i], perm[j] = perm[j], perm[i]
                    trial = score(perm)
                    if trial.value < current.value:
                        current = trial
                        improved = True
                    else:
                        perm[i], perm[j] = perm[j], perm[i]
            if not improved:
                break
        best_cut, best_perm = current, perm

    return AlignmentResult(best_cut.value, tuple(int(i) for i in best_perm),
                           best_cut.exact, best_cut)


# ---------------------------------------------------------------------------
# stretched cut distance for general graphon specs
# ---------------------------------------------------------------------------

def _zero_pad(w, T: float):
    """Extend the support of a step graphon to ``[0, T]`` with zero cells.

    Returns ``None`` when ``T`` is not a whole number of cells away, in
    which case the caller falls back to the nonuniform union grid.
    """
    if math.isclose(w.t, T, rel_tol=1e-12):
        return w
    k_new = int(round(T / w.cell_width))
    if k_new < w.k or k_new > core._MAX_REFINE_CELLS:
        return None
    if not math.isclose(k_new * w.cell_width, T, rel_tol=1e-9, abs_tol=0.0):
        return None
    v = np.zeros((k_new, k_new))
    v[: w.k, : w.k] = w.values
    return type(w)(v, T, w.value_bound)


def stretched_cut_distance(w1: GraphonSpec, w2: GraphonSpec, mode: str = "degree_sort",
                           resolution: int | None = None, iters: int = 2,
                           restarts: int = 64, seed: int = 0) -> AlignmentResult:
    """Cut distance between the stretched versions of two graphons.

    Both inputs are stretched to unit 1-norm, placed on a common grid over
    ``[0, max(t1, t2)]`` (zero-padding the shorter support) and compared with
    :func:`cut_distance_steps`.  When the two grids are incommensurable the
    difference is formed exactly on the nonuniform union grid and only the
    identity alignment is evaluated (an upper bound on the relabeled
    distance); the result is then flagged ``exact=False``.
    """
    s1, _ = stretch(_to_spec(w1))
    s2, _ = stretch(_to_spec(w2))
    a = core.as_step(s1, resolution=resolution)
    b = core.as_step(s2, resolution=resolution)

    T = max(a.t, b.t)
    pa = _zero_pad(a, T)
    pb = _zero_pad(b, T)
    if pa is not None and pb is not None:
        try:
            return cut_distance_steps(pa, pb, mode=mode, iters=iters,
                                      restarts=restarts, seed=seed)
        except ResolutionTooLargeError:
            pass  # fall through to the nonuniform path

    def union_cut(x, y):
        widths, vx, vy = core.common_grid(x, y)
        cut_mode = ("exact" if (mode == "exact" and widths.size <= EXACT_CUT_LIMIT)
                    else "heuristic")
        return _weighted_cut_norm(vx - vy, widths, cut_mode, restarts, seed)

    # each input's own cells are equal-measure, so sorting them by row sum
    # is a valid relabeling even though the union grid is nonuniform
    candidates = [union_cut(a, b)]
    if mode != "exact":
        sa = _permute(a.values, _degree_sort_perm(a.values))
        sb = _permute(b.values, _degree_sort_perm(b.values))
        candidates.append(union_cut(type(a)(sa, a.t, a.value_bound),
                                    type(b)(sb, b.t, b.value_bound)))
    cut = min(candidates, key=lambda c: c.value)
    return AlignmentResult(cut.value, None, False, cut)


def _to_spec(w) -> GraphonSpec:
    if isinstance(w, (StepGraphon, ConstantBox, RankOneExp, CelebrityLimit)):
        return w
    raise TypeError(f"not a graphon spec: {type(w).__name__}")
