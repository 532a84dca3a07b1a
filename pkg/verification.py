"""Cross-engine agreement suite: family formulas vs truncated polynomials vs brute force."""
import inspect
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional

import networkx as nx
import numpy as np

from complexes.builders import (build_complex, complete_graph, cycle_graph, dandelion_graph, disjoint_union,
                                graph_hasse, hasse, octopus_graph, path_graph, quotient, star_graph)
from complexes.models import Graph, HasseDiagram
from errors import InputError, MorseFlowError, VerificationError
from families import formulas
from flows.engine import (all_prescriptions, deform_to_acyclic, flow_from_morse, is_acyclic, is_flow,
                          is_matching, morse_from_flow)
from oracle.census import brute_force_census
from poly.engine import graph_poly, prob, profile_prob, quotient_prob
from poly.models import AnomalyConstraint
from randlab.experiments import density_witnesses
from randlab.sampling import mc_prob, sample_gnN


logger = logging.getLogger(__name__)

LEVELS = ("default", "deep")
SUITE_SEED = 20240601

PATH_SERIES = [Fraction(3, 4), Fraction(1, 2), Fraction(21, 64), Fraction(55, 256), Fraction(9, 64),
               Fraction(377, 4096), Fraction(987, 16384), Fraction(323, 8192)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, **self.detail}


@dataclass(frozen=True)
class VerifyReport:
    level: str
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]


def expect_equal(what: str, got, want, **context):
    if got != want:
        raise VerificationError(f"{what}: got {got}, expected {want}", got=str(got), expected=str(want), **context)


def expect(condition: bool, what: str, **context):
    if not condition:
        raise VerificationError(what, **context)


def brute(g: Graph, jobs: int = 1) -> Fraction:
    return brute_force_census(g, jobs=jobs, count_acyclic=False).probability


def random_graphs(count: int, max_edges: int, seed: int, max_vertices: int = 6) -> Iterator[Graph]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(2, max_vertices + 1))
        n_edges = int(rng.integers(0, min(max_edges, math.comb(n, 2)) + 1))
        yield sample_gnN(n, n_edges, rng)


# Family values

def check_single_edge(jobs: int = 1):
    g = path_graph(1)
    for engine, value in (("formula", formulas.path_prob(1)), ("exact", prob(g)), ("brute", brute(g, jobs))):
        expect_equal(f"P(L_1) by {engine}", value, Fraction(3, 4))


def check_path_series(jobs: int = 1):
    expect_equal("path recurrence", formulas.path_series_check(8), PATH_SERIES)
    expect_equal("generating function", formulas.generating_function_coefficients(8), PATH_SERIES)
    for n in range(1, 7):
        expect_equal(f"P(L_{n}) by brute force", brute(path_graph(n), jobs), PATH_SERIES[n - 1])
        expect_equal(f"P(L_{n}) exact", prob(path_graph(n)), PATH_SERIES[n - 1])


def check_stars(jobs: int = 1):
    for n in range(1, 11):
        expected = Fraction(n + 2, 2 ** (n + 1))
        expect_equal(f"P(S_{n}) formula", formulas.star_prob(n), expected)
        expect_equal(f"P(S_{n}) exact", prob(star_graph(n)), expected)
        if n <= 6:
            expect_equal(f"P(S_{n}) by brute force", brute(star_graph(n), jobs), expected)


def check_cycles(jobs: int = 1):
    expected = {3: Fraction(9, 32), 4: Fraction(47, 256), 5: Fraction(123, 1024)}
    for n, value in expected.items():
        expect_equal(f"P(C_{n}) transfer", formulas.cycle_prob(n), value)
        expect_equal(f"P(C_{n}) recurrence", formulas.cycle_prob_by_recurrence(n), value)
        expect_equal(f"P(C_{n}) exact", prob(cycle_graph(n)), value)
        expect_equal(f"P(C_{n}) by brute force", brute(cycle_graph(n), jobs), value)


def check_complete(jobs: int = 1):
    expect_equal("c_3", formulas.complete_coeffs(3).coeffs, (1, 2, 3, 2))
    expect_equal("P(K_3)", formulas.complete_prob(3), Fraction(9, 32))
    expect_equal("P(K_3) = P(C_3)", formulas.complete_prob(3), formulas.cycle_prob(3))
    expect_equal("P(K_4)", formulas.complete_prob(4), Fraction(163, 4096))
    expect_equal("P(K_4) by brute force", brute(complete_graph(4), jobs), Fraction(163, 4096))
    expect_equal("P(K_5) exact", prob(complete_graph(5)), formulas.complete_prob(5))
    for n in range(3, 13):
        formulas.complete_bounds(n)


def octopus_shapes(max_edges: int) -> Iterator[tuple]:
    for k in range(3, max_edges + 1):
        for arms in itertools.product(range(1, max_edges + 1), repeat=k):
            if sum(arms) <= max_edges and list(arms) == sorted(arms, reverse=True):
                yield arms


def check_octopi(jobs: int = 1):
    for arms in octopus_shapes(6):
        expect_equal(f"P(O{arms})", formulas.octopus_prob(arms), brute(octopus_graph(arms), jobs))
    for n in range(1, 6):
        for m in range(1, 7 - n):
            expect_equal(f"P(D_{n},{m})", formulas.dandelion_prob(n, m), brute(dandelion_graph(n, m), jobs))
    for k in range(3, 11):
        expect_equal(f"O(1^{k}) = S_{k}", formulas.octopus_prob((1,) * k), formulas.star_prob(k))
        expect_equal(f"O_{k}x1 = S_{k}", formulas.uniform_octopus_prob(k, 1), formulas.star_prob(k))
    for m in range(1, 10):
        expect_equal(f"D_1,{m} = S_{m + 1}", formulas.dandelion_prob(1, m), formulas.star_prob(m + 1))


# Structural rules

def check_global_bounds(count: int = 500, seed: int = SUITE_SEED):
    for g in random_graphs(count, 10, seed):
        p = prob(g)
        n_edges = g.n_edges
        expect(Fraction(1, 4 ** n_edges) <= p <= Fraction(3, 4) ** n_edges, "global bounds violated",
               graph=g.to_json(), p=str(p))
        is_matching_graph = all(d <= 1 for _, d in g.to_networkx().degree())
        expect((p == Fraction(3, 4) ** n_edges) == is_matching_graph,
               "upper bound is attained exactly on disjoint edges", graph=g.to_json())


def check_rules(count: int = 100, seed: int = SUITE_SEED + 1, jobs: int = 1):
    graphs = list(random_graphs(2 * count, 6, seed, max_vertices=5))
    for g1, g2 in zip(graphs[::2], graphs[1::2]):
        union = disjoint_union(g1, g2)
        expect_equal("product rule", prob(union), prob(g1) * prob(g2), g1=g1.to_json(), g2=g2.to_json())
        # every graph is a quotient of N disjoint edges
        if g1.n_edges:
            classes = [[2 * e for e, edge in enumerate(g1.edges) if edge[0] == v]
                       + [2 * e + 1 for e, edge in enumerate(g1.edges) if edge[1] == v]
                       for v in range(g1.n_vertices)]
            cover = Graph(2 * g1.n_edges, tuple((2 * e, 2 * e + 1) for e in range(g1.n_edges)))
            classes = [c for c in classes if c]
            expect_equal("quotient rule", quotient_prob(cover, classes), prob(g1), graph=g1.to_json())
        poly = graph_poly(g1)
        subset = list(range(min(3, g1.n_vertices)))
        total = sum((profile_prob(g1, AnomalyConstraint.of(dict(zip(subset, bits))), poly)
                     for bits in itertools.product((0, 1), repeat=len(subset))), Fraction(0))
        expect_equal("total probability over profiles", total, prob(g1), graph=g1.to_json())
    for n in range(3, 9):
        expect_equal(f"L_{n} -> C_{n}", quotient_prob(path_graph(n), [[0, n]] + [[v] for v in range(1, n)]),
                     formulas.cycle_prob(n))
        expect_equal(f"quotient of L_{n} is C_{n}",
                     quotient(path_graph(n), [[0, n]] + [[v] for v in range(1, n)]).graph, cycle_graph(n))
    g = star_graph(3)
    census = brute_force_census(g, subset=[0, 1], jobs=jobs, count_acyclic=False)
    for bits in itertools.product((0, 1), repeat=2):
        expect_equal(f"profile {bits} of S_3", profile_prob(g, AnomalyConstraint.of({0: bits[0], 1: bits[1]})),
                     census.profile_probability(bits))


# Flows

def flow_fixtures() -> List[HasseDiagram]:
    graphs = [path_graph(1), path_graph(2), path_graph(3), star_graph(3), cycle_graph(3), cycle_graph(4)]
    complexes = [build_complex([[0, 1], [1, 2], [2, 3], [0, 3]]), build_complex([[0, 1, 2]])]
    return [graph_hasse(g) for g in graphs] + [hasse(c) for c in complexes]


def small_graphs(max_edges: int) -> Iterator[Graph]:
    """Atlas graphs (up to 7 vertices) with 1..max_edges edges and no isolated vertex."""
    for atlas in nx.graph_atlas_g():
        if 1 <= atlas.number_of_edges() <= max_edges and all(d for _, d in atlas.degree()):
            yield Graph.from_edges(atlas.number_of_nodes(), atlas.edges())


def check_flow_diagram(diagram: HasseDiagram):
    for omega in all_prescriptions(diagram):
        flow = is_flow(omega, diagram)
        expect_equal("flow iff matching", flow, is_matching(omega, diagram), signs=list(omega.signs))
        if not flow:
            continue
        deformation = deform_to_acyclic(omega, diagram)
        expect(is_acyclic(deformation.result, diagram), "deformation left a cycle", signs=list(omega.signs))
        expect(deformation.result.sign_count == omega.sign_count - deformation.iterations,
               "each flip lowers the sign by one", signs=list(omega.signs))
        acyclic = deformation.result
        induced = flow_from_morse(morse_from_flow(acyclic, diagram), diagram.complex, diagram)
        expect(induced.is_morse and induced.prescription == acyclic, "Morse round trip failed",
               signs=list(acyclic.signs))


def check_flows():
    for diagram in flow_fixtures():
        check_flow_diagram(diagram)


def check_flows_exhaustive():
    for g in small_graphs(5):
        check_flow_diagram(graph_hasse(g))


# Asymptotics

def check_asymptotics():
    constants = formulas.growth_constants()
    ratio = formulas.path_prob(51) / formulas.path_prob(50)
    expect(abs(float(ratio) - (3 + math.sqrt(5)) / 8) < 1e-12, "p_51/p_50 far from r", ratio=float(ratio))
    h_path = formulas.h_invariant(formulas.path_prob(200), 200)
    expect(abs(h_path - constants.log_r) < 0.01, "h(L_200) far from log r", h=h_path)
    h_star = formulas.h_invariant(formulas.star_prob(60), 60)
    expect(abs(h_star - constants.log_half) < 0.06, "h(S_60) far from log(1/2)", h=h_star)
    previous = 0.0
    for n in range(3, 41):
        n_edges = math.comb(n, 2)
        h = formulas.h_invariant(formulas.complete_prob(n), n_edges)
        expect(h < previous, "h(K_n) is not decreasing", n=n, h=h)
        low = constants.log_quarter + 2 * math.log(1 + n / 2) / (n - 1)
        high = constants.log_quarter + 2 * math.log(n + 1) / (n - 1)
        expect(low - 1e-12 <= h <= high + 1e-12, "h(K_n) escapes its sandwich", n=n, h=h)
        previous = h


def check_density():
    for witness in density_witnesses():
        expect(witness.error < 0.02, "density witness too far", target=witness.target, h=witness.h)


def check_monte_carlo():
    for g in (path_graph(1), cycle_graph(4), star_graph(3)):
        estimate = mc_prob(g, 100_000, SUITE_SEED)
        exact = float(prob(g))
        expect(abs(estimate.estimate - exact) <= 4 * estimate.half_width, "Monte Carlo estimate off",
               graph=g.to_json(), estimate=estimate.estimate, exact=exact)


def check_random_vs_oracle(count: int = 100, seed: int = SUITE_SEED + 2, jobs: int = 1):
    for g in random_graphs(count, 10, seed, max_vertices=7):
        expect_equal("exact vs brute force", prob(g), brute(g, jobs), graph=g.to_json())


Check = Callable[..., None]

DEFAULT_CHECKS: Dict[str, Check] = {
    "single_edge": check_single_edge,
    "path_series": check_path_series,
    "stars": check_stars,
    "cycles": check_cycles,
    "complete": check_complete,
    "octopi": check_octopi,
    "global_bounds": check_global_bounds,
    "rules": check_rules,
    "flows": check_flows,
    "asymptotics": check_asymptotics,
    "density": check_density,
    "monte_carlo": check_monte_carlo,
}

DEEP_CHECKS: Dict[str, Check] = {
    "flows_exhaustive": check_flows_exhaustive,
    "random_vs_oracle": check_random_vs_oracle,
}


def _takes_jobs(check: Check) -> bool:
    return "jobs" in inspect.signature(check).parameters


def run_checks(level: str = "default", jobs: int = 1, checks: Optional[Dict[str, Check]] = None) -> VerifyReport:
    if level not in LEVELS:
        raise InputError(f"unknown verify level '{level}'", known=list(LEVELS))
    if checks is None:
        checks = dict(DEFAULT_CHECKS)
        if level == "deep":
            checks.update(DEEP_CHECKS)
    results = []
    for name, check in checks.items():
        try:
            check(jobs=jobs) if _takes_jobs(check) else check()
        except MorseFlowError as e:
            logger.error("check %s failed: %s", name, e.message)
            results.append(CheckResult(name, False, e.to_dict()))
        else:
            logger.info("check %s passed", name)
            results.append(CheckResult(name, True))
    return VerifyReport(level, results)
