"""Shared oracles for the test suite.

These are deliberately independent of the library code paths they check:
brute-force enumerations, quadrature, and closed-form arithmetic only.
"""

import numpy as np

from graphonsp import SignedStepGraphon, StepGraphon
from graphonsp.rng import substream


def random_step_graphon(seed, k=None, t=None, signed=False, kmax=12):
    rng = substream(seed, 0x7E57)
    if k is None:
        k = int(rng.integers(2, kmax + 1))
    if t is None:
        t = float(rng.uniform(0.2, 5.0))
    v = rng.uniform(-1.0 if signed else 0.0, 1.0, (k, k))
    v = (v + v.T) / 2.0
    cls = SignedStepGraphon if signed else StepGraphon
    return cls(v, t, 1.0)


def brute_force_cut_norm(w) -> float:
    """Enumerate every (row subset, column subset) pair directly.

    Independent of the library's exact mode, which never enumerates column
    subsets (it derives the optimal columns per row subset).
    """
    M = w.values
    k = w.k
    area = (w.t / w.k) ** 2
    subsets = ((np.arange(1 << k)[:, None] >> np.arange(k)) & 1).astype(np.float64)
    row_sums = subsets @ M              # (2^k, k)
    objective = np.abs(row_sums @ subsets.T)  # (2^k row sets, 2^k col sets)
    flat = int(np.argmax(objective))
    si, ti = divmod(flat, 1 << k)
    rows = [i for i in range(k) if (si >> i) & 1]
    cols = [j for j in range(k) if (ti >> j) & 1]
    if not rows or not cols:
        return 0.0
    # canonical evaluation: sorted summation is orientation-invariant
    return abs(area * float(np.sort(M[np.ix_(rows, cols)], axis=None).sum()))


def quadrature_l1_between(w, func, n_grid=4000):
    """Midpoint quadrature of ``|w - func|`` over the union support."""
    T = w.support_length
    xs = (np.arange(n_grid) + 0.5) * (T / n_grid)
    diff = np.abs(np.asarray(w.eval(xs[:, None], xs[None, :]))
                  - func(xs[:, None], xs[None, :]))
    return float(diff.sum()) * (T / n_grid) ** 2


def l1_against_exp_decay(values, edges, rate):
    """Exact l1 distance between a step signal and ``x -> exp(-rate x)``.

    Per-cell closed form with the crossing point of the decreasing target,
    plus the tail mass beyond the last edge.
    """
    a, b = edges[:-1], edges[1:]
    v = np.asarray(values, dtype=np.float64)
    x_star = np.where(v > 0, -np.log(np.clip(v, 1e-300, None)) / rate, b)
    x_c = np.clip(x_star, a, b)
    antider = lambda u: np.exp(-rate * u) / rate
    parts = ((antider(a) - antider(x_c)) - v * (x_c - a)) \
        + (v * (b - x_c) - (antider(x_c) - antider(b)))
    return float(np.abs(parts).sum() + antider(edges[-1]))
