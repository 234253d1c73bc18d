import math

import numpy as np
import pytest

import graphonsp as gsp
from graphonsp.errors import ProbabilityRangeError, ScheduleError
from graphonsp.rng import derive_key, substream


class TestSampleGraph:
    def test_deterministic_given_seed(self):
        a = gsp.sample_graph(gsp.RankOneExp(1.0, 1.0), 4.0, 200, seed=11)
        b = gsp.sample_graph(gsp.RankOneExp(1.0, 1.0), 4.0, 200, seed=11)
        assert np.array_equal(a.points.xs, b.points.xs)
        assert np.array_equal(a.graph.edge_array, b.graph.edge_array)
        c = gsp.sample_graph(gsp.RankOneExp(1.0, 1.0), 4.0, 200, seed=12)
        assert not np.array_equal(a.graph.edge_array, c.graph.edge_array)

    def test_zero_graphon_gives_empty_graph(self):
        sg = gsp.sample_graph(gsp.ConstantBox(0.0, 1.0), 1.0, 50, seed=0)
        assert sg.graph.edge_count == 0

    def test_unit_box_gives_complete_graph(self):
        sg = gsp.sample_graph(gsp.ConstantBox(1.0, 1.0), 1.0, 30, seed=0)
        assert sg.graph.edge_count == 30 * 29 // 2

    def test_points_sorted_in_range(self):
        sg = gsp.sample_graph(gsp.CelebrityLimit(), 2.0, 100, seed=5)
        xs = sg.points.xs
        assert np.all(np.diff(xs) >= 0) and xs[0] >= 0 and xs[-1] <= 2.0

    def test_probability_range_error_names_the_point(self):
        with pytest.raises(ProbabilityRangeError, match="exceeds 1"):
            gsp.sample_graph(gsp.RankOneExp(2.0, 1.0), 1.0, 20, seed=0)

    def test_celebrity_edge_count_matches_binomial_prediction(self):
        # |E| = C(K, 2) with K ~ Bin(n, 1/2); exact mean and variance from
        # binomial moments: E = C(n,2)/4, Var via E[K^3], E[K^4]
        n, t, seeds = 100, 2.0, 200
        p = 0.5
        mu = n * p
        s2 = n * p * (1 - p)
        ek2 = s2 + mu**2
        ek3 = mu**3 + 3 * mu * s2 + n * p * (1 - p) * (1 - 2 * p)
        mu4c = n * p * (1 - p) * (1 + 3 * (n - 2) * p * (1 - p))
        ek4 = mu4c + 4 * mu * (n * p * (1 - p) * (1 - 2 * p)) + 6 * mu**2 * s2 + mu**4
        mean_e = (ek2 - mu) / 2
        var_e = (ek4 - 2 * ek3 + ek2) / 4 - mean_e**2
        assert mean_e == pytest.approx(math.comb(n, 2) / 4)
        counts = [gsp.sample_graph(gsp.CelebrityLimit(), t, n, seed=s).graph.edge_count
                  for s in range(seeds)]
        se_mean = math.sqrt(var_e / seeds)
        assert abs(np.mean(counts) - mean_e) <= 3 * se_mean


class TestDoubleSequence:
    def test_single_cell_reduces_to_sample_graph(self):
        grid = gsp.sample_double_sequence(gsp.CelebrityLimit(), [2.0], [50], seed=9)
        cell = grid[0][0]
        again = gsp.sample_graph(gsp.CelebrityLimit(), 2.0, 50, cell.seed, m_index=0)
        assert np.array_equal(cell.graph.edge_array, again.graph.edge_array)

    def test_non_increasing_schedule_errors(self):
        with pytest.raises(ScheduleError):
            gsp.sample_double_sequence(gsp.CelebrityLimit(), [2.0, 2.0], [10], seed=0)

    def test_rank_one_densities_decrease_toward_closed_form_limits(self):
        # closed-form limits (1 - e^{-t})^2 / t^2
        w = gsp.RankOneExp(1.0, 1.0)
        limits = [(1 - math.exp(-t)) ** 2 / t**2 for t in (2.0, 4.0, 8.0)]
        assert limits[0] == pytest.approx(0.18691, abs=1e-5)
        assert limits[1] == pytest.approx(0.06023, abs=1e-5)
        assert limits[2] == pytest.approx(0.01561, abs=1e-5)
        n = 1200
        dens = []
        for mi, t in enumerate((2.0, 4.0, 8.0)):
            vals = [gsp.pair_density(
                gsp.sample_graph(w, t, n, seed=s, m_index=mi).graph)
                for s in range(3)]
            dens.append(float(np.mean(vals)))
        assert dens[0] > dens[1] > dens[2]
        for d, lim in zip(dens, limits):
            assert d == pytest.approx(lim, rel=0.15)

    def test_celebrity_density_limits_by_area_fraction(self):
        w = gsp.CelebrityLimit()
        for t, lim in ((1.0, 1.0), (2.0, 0.25), (4.0, 1 / 16)):
            assert gsp.l1_restricted(w, t) / t**2 == pytest.approx(lim, abs=1e-15)


class TestExtractSparseSubsequence:
    def test_tolerance_one_accepts_first_entry(self):
        grid = gsp.sample_double_sequence(gsp.CelebrityLimit(), [2.0], [20, 40],
                                          seed=4)
        spec = gsp.extract_sparse_subsequence(grid, gsp.CelebrityLimit(),
                                              resolution=64)
        assert spec.phi[1] == 20
        assert not spec.gaps

    def test_scan_finds_smallest_qualifying_n(self):
        w = gsp.CelebrityLimit()
        grid = gsp.sample_double_sequence(w, [1.0, 2.0], [10, 100, 400], seed=8)
        spec = gsp.extract_sparse_subsequence(grid, w, resolution=64)
        # row m=2 has tolerance 1/2 on density |d - 1/4|; all sizes qualify on
        # density, so the cut-distance criterion drives the selection
        assert set(spec.phi).issubset({1, 2})
        for m, _, n, dens, target, dist in spec.rows:
            assert abs(dens - target) <= 1.0 / m + 1e-12
            assert dist <= 1.0 / m + 1e-12

    def test_gap_reported_when_nothing_qualifies(self):
        # tiny samples of a dense target at a tight tolerance leave a gap
        w = gsp.CelebrityLimit()
        grid = gsp.sample_double_sequence(w, [1.0, 2.0, 3.0], [3], seed=2)
        spec = gsp.extract_sparse_subsequence(grid, w, resolution=32)
        assert len(spec.phi) + len(spec.gaps) == 3

    def test_empty_grid_errors(self):
        with pytest.raises(ScheduleError):
            gsp.extract_sparse_subsequence([], gsp.CelebrityLimit())


class TestSampleSignal:
    def test_constant_profile(self):
        pts = gsp.SamplePoints(0, 2.0, np.array([0.1, 0.5, 1.5]))
        f = gsp.sample_signal(lambda x: np.full_like(x, 3.0), pts)
        assert np.all(f.values == 3.0) and f.t == 1.0 and f.k == 3

    def test_linear_profile_at_given_points(self):
        pts = gsp.SamplePoints(0, 2.0, np.array([0.5, 1.0, 1.5]))
        f = gsp.sample_signal(lambda x: x, pts)
        assert np.array_equal(f.values, [0.5, 1.0, 1.5])

    def test_step_signal_input_inherits_bound(self):
        base = gsp.StepSignal(np.array([1.0, -2.0]), 2.0)
        pts = gsp.SamplePoints(0, 2.0, np.array([0.25, 1.75]))
        f = gsp.sample_signal(base, pts)
        assert np.array_equal(f.values, [1.0, -2.0])
        assert f.bound == base.bound

    def test_values_within_sampled_range(self):
        rng = substream(3, 1)
        pts = gsp.SamplePoints(0, 8.0, np.sort(rng.uniform(0, 8, 500)))
        f = gsp.sample_signal(lambda x: np.exp(-x), pts)
        assert f.values.min() >= math.exp(-8.0) - 1e-15
        assert f.values.max() <= 1.0 + 1e-15

    def test_signal_error_decreases_with_n(self):
        # stretched sampled signal approaches e^{-x} in 1-norm as n grows;
        # full box => complete graph => deterministic stretch factor
        from helpers import l1_against_exp_decay

        def err(n, seed):
            sg = gsp.sample_graph(gsp.ConstantBox(1.0, 8.0), 8.0, n, seed=seed)
            assert sg.graph.edge_count == n * (n - 1) // 2
            f_mn = gsp.sample_signal(lambda x: np.exp(-x), sg.points)
            r = math.sqrt(gsp.canonical_graphon(sg.graph).l1_norm)
            f_s = gsp.stretch_signal(f_mn, r)
            return l1_against_exp_decay(f_s.values, f_s.edges(), 8.0)

        errs_small = [err(200, s) for s in range(5)]
        errs_big = [err(1600, s) for s in range(5)]
        assert np.mean(errs_big) < np.mean(errs_small)


class TestSampledGraphonConvergence:
    def test_stretched_distance_decreases_along_doubling_schedule(self):
        # heuristic upper bound on the distance between the sample's
        # canonical graphon and the restricted target shrinks as (t, n) double
        w = gsp.CelebrityLimit()
        schedule = [(1.0, 200), (2.0, 800), (4.0, 3200)]
        monotone = 0
        for seed in range(10):
            dists = []
            for mi, (t, n) in enumerate(schedule):
                g = gsp.sample_graph(w, t, n, seed=seed, m_index=mi).graph
                wm = gsp.restrict(w, t, resolution=64)
                dists.append(gsp.stretched_cut_distance(
                    gsp.canonical_graphon(g), wm, mode="degree_sort",
                    restarts=4, seed=seed).distance)
            monotone += dists[0] > dists[1] > dists[2]
        assert monotone >= 9


class TestGrowSubgraphs:
    def test_full_batch_returns_whole_graph(self):
        g = gsp.Graph(5, [(0, 1), (2, 3), (3, 4)])
        steps = gsp.grow_subgraphs(g, gsp.GrowthSchedule(5, 1, drop_isolated=False),
                                   seed=0)
        assert steps[0].graph == g

    def test_induced_subgraph_sizes(self):
        g = gsp.Graph(3, [(0, 1), (0, 2), (1, 2)])
        steps = gsp.grow_subgraphs(g, gsp.GrowthSchedule(1, 2, drop_isolated=False),
                                   seed=1)
        assert [s.graph.n for s in steps] == [1, 2]
        assert steps[1].graph.edge_count == 1  # any K3 pair is an edge

    def test_nested_before_isolation_removal(self):
        g = gsp.dense_core_graph(200, 0.5)
        steps = gsp.grow_subgraphs(g, gsp.GrowthSchedule(40, 5, drop_isolated=False),
                                   seed=3)
        prev = set()
        for s in steps:
            cur = set(s.vertices.tolist())
            assert prev <= cur
            prev = cur

    def test_isolation_removal_renumbers_and_maps(self):
        g = gsp.Graph(4, [(1, 3)])
        steps = gsp.grow_subgraphs(g, gsp.GrowthSchedule(4, 1, drop_isolated=True),
                                   seed=0)
        s = steps[0]
        assert s.graph.n == 2 and s.graph.edges == {(0, 1)}
        assert list(s.vertices) == [1, 3]

    def test_schedule_exceeding_graph_errors(self):
        with pytest.raises(ScheduleError):
            gsp.grow_subgraphs(gsp.Graph(3, []), gsp.GrowthSchedule(2, 2), seed=0)

    def test_dense_core_growth_density_concentrates(self):
        # densities of growing induced samples concentrate near
        # (|V'|/n)^2 / 2: flat in the step index, not decreasing
        n, alpha = 2000, 0.5
        g = gsp.dense_core_graph(n, alpha)
        q = math.floor(n**0.75) / n
        target = q * q / 2.0
        ok = 0
        for seed in range(50):
            steps = gsp.grow_subgraphs(g, gsp.GrowthSchedule(200, 10,
                                                             drop_isolated=False),
                                       seed=seed)
            dens = [s.graph.edge_density for s in steps[1:]]
            ok += all(abs(d - target) <= 0.5 * target for d in dens)
        assert ok >= 45


class TestDenseCoreGraph:
    def test_core_size_and_edges(self):
        g = gsp.dense_core_graph(400, 0.5)
        k = math.floor(400**0.75)
        assert k == 89
        assert g.n == 400
        assert g.edge_count == k * (k - 1) // 2
        core, kept = g.drop_isolated()
        assert core.n == k

    def test_sparse_in_n(self):
        d1 = gsp.dense_core_graph(400, 0.5).edge_density
        d2 = gsp.dense_core_graph(6400, 0.5).edge_density
        assert d2 < d1


class TestSubstreams:
    def test_independent_paths(self):
        a = substream(1, 2, 3).random(4)
        b = substream(1, 2, 4).random(4)
        assert not np.array_equal(a, b)
        assert np.array_equal(a, substream(1, 2, 3).random(4))

    def test_derive_key_stable(self):
        assert derive_key(7, 1, 2) == derive_key(7, 1, 2)
        assert derive_key(7, 1, 2) != derive_key(7, 2, 1)
