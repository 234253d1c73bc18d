# =====================================================================
# Filters: integral operators, spectral filters, and coefficient transfer
# =====================================================================
#
# Part 1 applies the integral operator of a stretched graphon and checks a
# general continuous filter h(T) two independent ways (eigendecomposition
# vs Chebyshev recurrence in operator arithmetic).
#
# Part 2 runs the regression pipeline: synthesize a diffusion on a graph,
# fit polynomial filters on growing subgraphs under the classical (A/m)
# and generalized (A/sqrt(2|E|)) scalings, and compare how steadily the
# leading coefficients converge to the full-graph ground truth.

import math

import numpy as np

import graphonsp as gsp
from graphonsp.operators import chebyshev_polynomial_apply
from graphonsp.rng import substream

print("=" * 70)
print("part 1: operators and spectral filters")
print("=" * 70)

rng = substream(1, 2)
v = rng.uniform(0, 1, (96, 96))
w = gsp.StepGraphon((v + v.T) / 2, 1.0, 1.0)
op = gsp.GraphonOperator.from_spec(w)
print(f"operator grid: {op.kernel.k} cells on [0, {op.kernel.t:.4f}], "
      f"norm bound {op.norm_bound:.4f}")

f = gsp.StepSignal(rng.standard_normal(96), op.kernel.t)
tf = gsp.apply(op, f)
print(f"||f||_2 = {f.l2_norm:.4f}, ||T f||_2 = {tf.l2_norm:.4f} "
      f"<= bound * ||f||_2 = {op.norm_bound * f.l2_norm:.4f}")

h = gsp.SpectralFilter.fit(lambda x: np.tanh(2 * x),
                           (-op.norm_bound, op.norm_bound), degree=40,
                           tolerance=1e-9)
spectral_route, tail = gsp.apply_spectral(h, op, f, k_eigs=96)
poly_route = chebyshev_polynomial_apply(h, op, f)
gap = np.linalg.norm(spectral_route.values - poly_route.values)
gap /= np.linalg.norm(spectral_route.values)
print(f"h(T) f two ways: relative gap {gap:.2e} (tail bound {tail:.1e})")
print("Continuous filters are uniform limits of polynomial filters, so the")
print("eigendecomposition is optional: the Chebyshev route never factors T.")

truncated, tail = gsp.apply_spectral(h, op, f, k_eigs=6)
err = np.linalg.norm(truncated.values - spectral_route.values)
err *= math.sqrt(op.kernel.cell_width)
print(f"6 eigenpairs per end: true error {err:.3e} <= reported bound {tail:.3e}")

print()
print("=" * 70)
print("part 2: filter-coefficient convergence across subgraph sizes")
print("=" * 70)

g = gsp.core_periphery_graph(1200, 0.5, 0.5, seed=5)
spec = gsp.DiffusionSpec(degree=2)
sizes = sorted(set(np.linspace(120, 1200, 12).astype(int)))
sizes[-1] = 1200
traj = gsp.coefficient_trajectory(g, sizes, spec, seed=5)

print(f"{'k':>3} {'m_k':>6} {'E_k':>7} {'sqrt|c| classical':>18} "
      f"{'sqrt|c| generalized':>20}")
sc = gsp.signed_sqrt(traj.classical)
sg = gsp.signed_sqrt(traj.generalized)
for i, k in enumerate(traj.ks):
    print(f"{k:>3} {traj.sizes[i]:>6} {traj.edge_counts[i]:>7} "
          f"{sc[i]:>18.4f} {sg[i]:>20.4f}")

tail_from = len(traj.ks) - 5
for name, series in (("classical", traj.classical),
                     ("generalized", traj.generalized)):
    rr = gsp.convergence_ratios(series, tail_from)
    tail_var = float(np.var(series[tail_from:]))
    ratios = ("exact convergence" if rr.exact_convergence
              else np.array2string(rr.ratios, precision=3))
    print(f"{name:>12}: tail variance {tail_var:.3e}, step ratios {ratios}")

print()
print("The generalized scaling inherits the sqrt(2|E|) growth of the")
print("spectrum, so its leading coefficient settles long before the")
print("classical one, matching the spectral diagnostics of demo 03.")
