import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from complexes.builders import complete_graph, cycle_graph, path_graph, star_graph
from complexes.models import Graph
from engines import compute_prob, resolve_engine
from errors import InputError, SizeLimitError
from families.formulas import h_invariant
from poly.engine import prob
from randlab import experiments
from randlab.sampling import McEstimate, confidence_interval, count_flows, mc_prob, sample_gnN, sample_gnp
from settings import settings


class TestSamplers:

    def test_gnp_is_seeded(self):
        assert sample_gnp(9, 0.4, 11) == sample_gnp(9, 0.4, 11)

    def test_gnp_extremes(self):
        assert sample_gnp(5, 0.0, 1).n_edges == 0
        assert sample_gnp(5, 1.0, 1) == complete_graph(5)
        with pytest.raises(InputError):
            sample_gnp(5, 1.5, 1)

    def test_gnN(self):
        g = sample_gnN(7, 9, 3)
        assert g.n_edges == 9
        assert g == sample_gnN(7, 9, 3)
        with pytest.raises(InputError):
            sample_gnN(4, 7, 3)


class TestMonteCarlo:

    def test_count_flows(self):
        g = path_graph(1)
        negative = np.array([[False, False], [True, False], [False, True], [True, True]])
        assert count_flows(g, negative) == 3

    def test_count_flows_at_a_vertex(self):
        g = star_graph(2)
        # the centre is the low endpoint of both edges
        negative = np.array([[True, False, True, False], [True, False, False, True]])
        assert count_flows(g, negative) == 1

    def test_seeded(self):
        g = cycle_graph(4)
        assert mc_prob(g, 20_000, 5) == mc_prob(g, 20_000, 5)

    def test_independent_of_jobs(self):
        g = cycle_graph(4)
        samples = 2 * settings.MC_CHUNK_SIZE + 123
        assert mc_prob(g, samples, 9, jobs=1).hits == mc_prob(g, samples, 9, jobs=2).hits

    def test_edgeless(self):
        estimate = mc_prob(Graph(2), 100, 0)
        assert estimate.estimate == 1.0
        assert estimate.h(0).point == 0.0

    def test_no_hits_gives_only_an_upper_bound(self):
        half, low, high, method = confidence_interval(0, 1000)
        assert method == "wilson"
        assert low == 0.0 < high
        estimate = McEstimate(1000, 0, 1, half, low, high, method)
        h = estimate.h(10)
        assert h.point is None
        assert h.upper == pytest.approx(math.log(high) / 10)

    def test_normal_interval(self):
        half, low, high, method = confidence_interval(500, 1000)
        assert method == "normal"
        assert half == pytest.approx(1.959964 * math.sqrt(0.25 / 1000), rel=1e-6)
        assert (low + high) / 2 == pytest.approx(0.5)

    @pytest.mark.slow
    @pytest.mark.parametrize("g", [path_graph(1), cycle_graph(4), star_graph(3)], ids=["L1", "C4", "S3"])
    def test_calibration(self, g):
        exact = float(prob(g))
        inside = 0
        for seed in range(100):
            estimate = mc_prob(g, 1_000_000, seed)
            inside += abs(estimate.estimate - exact) <= 4 * estimate.half_width
        assert inside >= 99


class TestEngines:

    def test_auto_prefers_polynomials(self):
        assert resolve_engine(cycle_graph(5), "auto") == "exact"

    def test_auto_falls_back(self, monkeypatch):
        monkeypatch.setattr(settings, "POLY_MAX_VERTICES", 3)
        assert resolve_engine(cycle_graph(5), "auto") == "brute"
        assert resolve_engine(complete_graph(6), "auto", limit=4 ** 10) == "mc"

    def test_unknown_engine(self):
        with pytest.raises(InputError):
            resolve_engine(cycle_graph(5), "magic")

    def test_brute_and_exact_agree(self):
        g = star_graph(3)
        assert compute_prob(g, "brute").exact == compute_prob(g, "exact").exact == Fraction(5, 16)

    def test_report(self):
        report = compute_prob(cycle_graph(4), "exact").report()
        assert report.p == "47/256"
        assert report.p_decimal == "0.18359375"
        assert report.h == pytest.approx(math.log(47 / 256) / 4)

    def test_empty_graph_report(self):
        report = compute_prob(Graph(3), "exact").report()
        assert report.p == "1/1"
        assert report.h == 0.0

    def test_mc_needs_seed(self):
        with pytest.raises(InputError):
            compute_prob(path_graph(1), "mc")

    def test_mc_report(self):
        report = compute_prob(path_graph(1), "mc", seed=1, samples=10_000).report()
        assert report.p is None
        assert report.samples == 10_000
        assert report.seed == 1


class TestThresholdScan:

    def test_x_range(self):
        with pytest.raises(InputError):
            experiments.threshold_scan(-2.0, 6, [3], 5, seed=1)
        with pytest.raises(InputError):
            experiments.threshold_scan(math.log(3 / 4), 6, [3], 5, seed=1)

    def test_endpoints_and_determinism(self):
        scan = experiments.threshold_scan(-0.6, 6, [0, 3, 15], 10, seed=3, engine="exact")
        assert scan == experiments.threshold_scan(-0.6, 6, [0, 3, 15], 10, seed=3, engine="exact")
        empty, _, full = scan.cells
        assert empty.hits == 0
        # G(6, 15) is K_6 and h(K_6) < -0.6
        assert full.hits == 10
        assert full.estimate == 1.0
        assert all(cell.undetermined == 0 for cell in scan.cells)

    def test_rows(self):
        scan = experiments.threshold_scan(-0.5, 5, [2, 4], 4, seed=8)
        rows = scan.to_rows()
        assert [row["N_or_p"] for row in rows] == [2, 4]
        assert all(row["seed"] == 8 and row["experiment"] == "threshold" for row in rows)

    def test_monotone_violations(self):
        cells = (
            experiments.ThresholdCell(N=1, samples=100, hits=90, undetermined=0, estimate=0.9, ci=0.05),
            experiments.ThresholdCell(N=2, samples=100, hits=10, undetermined=0, estimate=0.1, ci=0.05),
            experiments.ThresholdCell(N=3, samples=100, hits=12, undetermined=0, estimate=0.12, ci=0.05),
        )
        scan = experiments.ThresholdScan(-0.6, 6, 0, "exact", cells)
        assert scan.monotone_violations() == [2]


def test_gnp_sweep():
    sweep = experiments.gnp_sweep(5, [0.0, 1.0], 3, seed=2)
    empty, full = sweep.cells
    assert empty.edgeless == 3
    assert empty.mean == 0.0
    assert full.edgeless == 0
    assert full.std == 0.0
    assert full.mean == pytest.approx(h_invariant(prob(complete_graph(5)), 10))
    assert sum(full.histogram()["counts"]) == 3


class TestTrees:

    def test_exhaustive(self):
        result = experiments.tree_extremes(4)
        assert result.trees_scanned == 5 ** 3
        assert result.shapes == 3
        assert nx.is_isomorphic(result.argmin.to_networkx(), star_graph(4).to_networkx())
        assert nx.is_isomorphic(result.argmax.to_networkx(), path_graph(4).to_networkx())
        assert result.h_min == pytest.approx(math.log(6 / 32) / 4)
        assert result.h_max == pytest.approx(math.log(55 / 256) / 4)

    def test_shapes_agree_with_exhaustive(self):
        exhaustive = experiments.tree_extremes(5)
        shapes = experiments.tree_extremes(5, mode="shapes")
        assert shapes.trees_scanned == shapes.shapes == 6
        assert (shapes.h_min, shapes.h_max) == (exhaustive.h_min, exhaustive.h_max)

    def test_sampled(self):
        result = experiments.tree_extremes(6, mode="sampled", seed=4, samples=200)
        assert result.trees_scanned == 200
        assert result.seed == 4
        with pytest.raises(InputError):
            experiments.tree_extremes(6, mode="sampled")

    def test_exhaustive_limit(self):
        with pytest.raises(SizeLimitError):
            experiments.tree_extremes(settings.EXHAUSTIVE_TREE_MAX + 1)

    def test_trend(self):
        trend = experiments.tree_trend([3, 4, 5])
        assert [t.n for t in trend] == [3, 4, 5]
        assert all(t.h_min <= t.h_max for t in trend)


class TestDisjointUnions:

    def test_convexity(self):
        report = experiments.convexity_check(cycle_graph(3), star_graph(2))
        assert report.product_holds
        assert report.convex_holds
        assert report.p_union == Fraction(9, 32) * Fraction(1, 2)

    def test_convexity_needs_edges(self):
        with pytest.raises(InputError):
            experiments.convexity_check(Graph(2), star_graph(2))

    def test_density_witnesses(self):
        witnesses = experiments.density_witnesses([-0.5, -1.0])
        for witness in witnesses:
            assert witness.error < 0.02
            assert witness.n >= 3 and witness.m >= 0

    def test_small_witness_is_exact(self):
        witness = experiments.density_witness(-0.4)
        g = witness.graph()
        assert g.n_edges == math.comb(witness.n, 2) + witness.m
        assert h_invariant(prob(g), g.n_edges) == pytest.approx(witness.h, abs=1e-12)

    def test_density_target_range(self):
        with pytest.raises(InputError):
            experiments.density_witnesses([-1.5])

    @pytest.mark.slow
    def test_density_grid(self):
        targets = experiments.density_targets(20)
        assert len(targets) == 20
        assert all(w.error < 0.02 for w in experiments.density_witnesses(targets))


class TestMonotonicity:

    def test_probability_never_increases_with_edges(self):
        report = experiments.monotone_pairs(200, 6, seed=12)
        assert report.pairs == 200
        assert report.prob_violations == 0

    def test_h_can_increase_when_an_edge_is_added(self):
        small = Graph(5, ((0, 1), (1, 2)))
        big = Graph(5, ((0, 1), (1, 2), (3, 4)))
        assert prob(big) <= prob(small)
        assert h_invariant(prob(big), 3) > h_invariant(prob(small), 2)
