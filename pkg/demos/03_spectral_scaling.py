# =====================================================================
# Which scaling straightens the eigenvalue trajectories?
# =====================================================================
#
# If a growing graph sequence has a nonzero generalized-graphon limit,
# its extreme adjacency eigenvalues grow like sqrt(|E_n|); under the
# classical (dense) theory they grow like |V_n|; under bounded-degree
# assumptions they stay bounded.  Fitting lines through the origin under
# each hypothesis and comparing tail MSEs tells the models apart.

import math

import numpy as np

import graphonsp as gsp

n, alpha = 4000, 0.5
g = gsp.dense_core_graph(n, alpha)
print("=" * 70)
print(f"growth diagnostics on a dense-core graph: n={n}, core="
      f"{math.floor(n**0.75)}")
print("=" * 70)

steps = gsp.grow_subgraphs(g, gsp.GrowthSchedule(batch=400, steps=10), seed=3)
traj = gsp.trajectory([s.graph for s in steps], t_set=[1, -1])

print(f"{'step':>4} {'V':>6} {'E':>8} {'lam_1':>9} {'lam_1/V':>9} "
      f"{'lam_1/sqrt(2E)':>15}")
for p in traj:
    lam = p.eigenvalues[1]
    print(f"{p.n_index:>4} {p.n_vertices:>6} {p.n_edges:>8} {lam:>9.2f} "
          f"{lam / p.n_vertices:>9.4f} "
          f"{lam / math.sqrt(2 * p.n_edges):>15.4f}")

print()
print("three through-origin fits on the trajectory tail (steps 5..9):")
fits = gsp.fit_models(traj, tail_from=5, t=1)
for name in ("generalized", "classical", "graphing"):
    r = fits[name]
    print(f"  {name:>12}: slope {r.slope:9.4f}  MSE {r.mse:10.4e}")
best = min(fits, key=lambda k: fits[k].mse)
print(f"  -> smallest tail MSE: {best}")

print()
print("windowed averages of lambda_t scaled by |V| (a) and sqrt(|E|) (b):")
avg = gsp.moving_scaled_averages(traj, window=5)
for t in (1, -1):
    a, b = avg[t]
    print(f"  t={t:+d}: a = {np.array2string(a, precision=4)}")
    print(f"        b = {np.array2string(b, precision=4)}")
print()
print("The a-values sit near zero (the classical limit is the zero graphon)")
print("while the b-values stabilize: the sqrt(|E|) scaling is the one that")
print("converges, exactly as the generalized model predicts.")

print()
print("scaled spectrum sanity checks on closed-form graphs:")
k4 = gsp.Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
print(f"  K4: lambda_1/sqrt(2E) = {gsp.scaled_spectrum(k4, [1])[1]:.4f} "
      f"(= sqrt(3)/2 = {math.sqrt(3) / 2:.4f})")
star = gsp.Graph(9, [(0, i) for i in range(1, 9)])
print(f"  8-star: {gsp.scaled_spectrum(star, [1])[1]:.4f} "
      f"(= sqrt(8)/4 = {math.sqrt(8) / 4:.4f})")
