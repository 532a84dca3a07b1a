import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from complexes.builders import complete_graph, disjoint_union
from complexes.models import Graph
from engines import compute_prob
from errors import InputError, SizeLimitError, VerificationError
from families.formulas import complete_prob, h_invariant
from poly.engine import prob as exact_prob
from settings import settings
from .sampling import Z95, confidence_interval, edge_subgraph, sample_gnN, sample_gnp


logger = logging.getLogger(__name__)

LOG_QUARTER = math.log(1 / 4)
LOG_THREE_QUARTERS = math.log(3 / 4)


def _graph_seeds(seq: np.random.SeedSequence, count: int) -> List[Tuple[int, int]]:
    """(graph seed, Monte Carlo seed) per sampled graph."""
    return [tuple(int(s) for s in child.generate_state(2)) for child in seq.spawn(count)]


# Threshold scans

@dataclass(frozen=True)
class ThresholdCell:
    N: int
    samples: int
    hits: int
    undetermined: int
    estimate: float
    ci: float


@dataclass(frozen=True)
class ThresholdScan:
    """Empirical P_n(x, N): fraction of G(n, N) graphs with h <= x, per N."""
    x: float
    n: int
    seed: int
    engine: str
    cells: Tuple[ThresholdCell, ...]

    def monotone_violations(self, sigmas: float = 3.0) -> List[int]:
        """N values where the curve drops below its predecessor by more than `sigmas` σ."""
        violations = []
        for before, after in zip(self.cells, self.cells[1:]):
            spread = math.hypot(before.ci, after.ci) / Z95
            if after.estimate < before.estimate - sigmas * spread:
                violations.append(after.N)
        return violations

    def to_rows(self) -> List[dict]:
        return [
            {"experiment": "threshold", "n": self.n, "N_or_p": cell.N, "x": self.x,
             "samples": cell.samples, "hits": cell.hits, "estimate": cell.estimate,
             "ci": cell.ci, "seed": self.seed}
            for cell in self.cells
        ]


def threshold_scan(x: float, n: int, N_grid: Sequence[int], samples_per_cell: int, seed: int,
                   engine: str = "auto", mc_samples: Optional[int] = None) -> ThresholdScan:
    if not LOG_QUARTER < x < LOG_THREE_QUARTERS:
        raise InputError("x must lie strictly between log(1/4) and log(3/4)", x=x)
    if samples_per_cell < 1:
        raise InputError("samples_per_cell must be >= 1")
    cells = []
    cell_seqs = np.random.SeedSequence(seed).spawn(len(N_grid))
    for N, cell_seq in zip(N_grid, cell_seqs):
        hits = undetermined = 0
        for graph_seed, mc_seed in _graph_seeds(cell_seq, samples_per_cell):
            g = sample_gnN(n, N, graph_seed)
            if g.n_edges == 0:
                continue  # h = 0 > x
            result = compute_prob(g, engine, seed=mc_seed, samples=mc_samples)
            h = result.h
            if h is not None:
                hits += h <= x
            elif result.h_upper <= x:
                hits += 1
            else:
                undetermined += 1
        determined = samples_per_cell - undetermined
        estimate = hits / determined if determined else float("nan")
        ci = confidence_interval(hits, determined)[0] if determined else float("nan")
        cells.append(ThresholdCell(N, samples_per_cell, hits, undetermined, estimate, ci))
        logger.info("threshold n=%d N=%d: %d/%d with h <= %.4f", n, N, hits, determined, x)
    return ThresholdScan(x, n, seed, engine, tuple(cells))


# G(n, p) sweeps

@dataclass(frozen=True)
class GnpCell:
    p: float
    h_values: Tuple[float, ...]
    edgeless: int

    @property
    def mean(self) -> float:
        return float(np.mean(self.h_values))

    @property
    def std(self) -> float:
        return float(np.std(self.h_values))

    def histogram(self, bins: int = 10) -> Dict[str, list]:
        counts, edges = np.histogram(self.h_values, bins=bins, range=(LOG_QUARTER, 0.0))
        return {"counts": counts.tolist(), "edges": edges.tolist()}


@dataclass(frozen=True)
class GnpSweep:
    n: int
    seed: int
    cells: Tuple[GnpCell, ...]

    def to_rows(self) -> List[dict]:
        return [
            {"experiment": "gnp", "n": self.n, "N_or_p": cell.p, "x": "",
             "samples": len(cell.h_values), "hits": cell.edgeless, "estimate": cell.mean,
             "ci": Z95 * cell.std / math.sqrt(len(cell.h_values)), "seed": self.seed}
            for cell in self.cells
        ]


def gnp_sweep(n: int, ps: Sequence[float], samples: int, seed: int, engine: str = "auto",
              mc_samples: Optional[int] = None) -> GnpSweep:
    """Distribution of h over G(n, p); edgeless graphs contribute h = 0 and are counted apart."""
    cells = []
    for p, cell_seq in zip(ps, np.random.SeedSequence(seed).spawn(len(ps))):
        values = []
        edgeless = 0
        for graph_seed, mc_seed in _graph_seeds(cell_seq, samples):
            g = sample_gnp(n, p, graph_seed)
            edgeless += g.n_edges == 0
            result = compute_prob(g, engine, seed=mc_seed, samples=mc_samples)
            values.append(result.h if result.h is not None else result.h_upper)
        cells.append(GnpCell(p, tuple(values), edgeless))
    return GnpSweep(n, seed, tuple(cells))


# Trees

@dataclass(frozen=True)
class TreeExtremes:
    n: int
    mode: str
    h_min: float
    h_max: float
    argmin: Graph
    argmax: Graph
    trees_scanned: int
    shapes: int
    seed: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "n": self.n, "mode": self.mode, "h_min": self.h_min, "h_max": self.h_max,
            "argmin": self.argmin.to_json(), "argmax": self.argmax.to_json(),
            "trees_scanned": self.trees_scanned, "shapes": self.shapes, "seed": self.seed,
        }


def _prufer_tree(sequence: Sequence[int], n: int) -> Graph:
    if n == 1:
        return Graph(2, ((0, 1),))
    return Graph.from_edges(n + 1, nx.from_prufer_sequence(list(sequence)).edges())


def _scan_trees(trees, n: int, mode: str, seed: Optional[int]) -> TreeExtremes:
    # every tree in T_n has n edges, so ordering by h is ordering by the exact P
    cache: Dict[str, Fraction] = {}
    best_low = best_high = None
    scanned = 0
    for tree in trees:
        scanned += 1
        key = nx.weisfeiler_lehman_graph_hash(tree.to_networkx(), iterations=tree.n_vertices)
        if key not in cache:
            cache[key] = exact_prob(tree)
        p = cache[key]
        if best_low is None or p < best_low[0]:
            best_low = (p, tree)
        if best_high is None or p > best_high[0]:
            best_high = (p, tree)
    return TreeExtremes(
        n=n, mode=mode,
        h_min=h_invariant(best_low[0], n), h_max=h_invariant(best_high[0], n),
        argmin=best_low[1], argmax=best_high[1],
        trees_scanned=scanned, shapes=len(cache), seed=seed,
    )


def tree_extremes(n: int, mode: str = "exhaustive", seed: Optional[int] = None,
                  samples: int = 1000) -> TreeExtremes:
    """
    Extremes of h over trees on n+1 labelled vertices.

    exhaustive: all (n+1)^(n-1) Prüfer sequences; sampled: `samples` random sequences;
    shapes: one representative per isomorphism class.
    """
    if n < 1:
        raise InputError("trees need n >= 1 edges", n=n)
    if mode == "exhaustive":
        if n > settings.EXHAUSTIVE_TREE_MAX:
            raise SizeLimitError("exhaustive tree scan is limited", n=n, limit=settings.EXHAUSTIVE_TREE_MAX)
        sequences = itertools.product(range(n + 1), repeat=n - 1)
        trees = (_prufer_tree(s, n) for s in sequences)
    elif mode == "sampled":
        if seed is None:
            raise InputError("sampled tree scans require a seed")
        rng = np.random.default_rng(seed)
        trees = (_prufer_tree(rng.integers(0, n + 1, size=n - 1).tolist(), n) for _ in range(samples))
    elif mode == "shapes":
        trees = (Graph.from_edges(n + 1, t.edges()) for t in nx.nonisomorphic_trees(n + 1))
    else:
        raise InputError(f"unknown tree scan mode '{mode}'", known=["exhaustive", "sampled", "shapes"])
    return _scan_trees(trees, n, mode, seed)


def tree_trend(n_values: Sequence[int], mode: str = "shapes", seed: Optional[int] = None) -> List[TreeExtremes]:
    return [tree_extremes(n, mode, seed) for n in n_values]


# Disjoint unions

@dataclass(frozen=True)
class ConvexityReport:
    p1: Fraction
    p2: Fraction
    p_union: Fraction
    h1: float
    h2: float
    h_union: float
    h_combination: float

    @property
    def product_holds(self) -> bool:
        return self.p_union == self.p1 * self.p2

    @property
    def convex_holds(self) -> bool:
        return abs(self.h_union - self.h_combination) <= 1e-10

    def to_json(self) -> dict:
        return {
            "p1": str(self.p1), "p2": str(self.p2), "p_union": str(self.p_union),
            "h1": self.h1, "h2": self.h2, "h_union": self.h_union, "h_combination": self.h_combination,
            "product_holds": self.product_holds, "convex_holds": self.convex_holds,
        }


def convexity_check(g1: Graph, g2: Graph) -> ConvexityReport:
    """h(Γ ⊔ Γ') is the edge-weighted mean of h(Γ) and h(Γ')."""
    if g1.n_edges == 0 or g2.n_edges == 0:
        raise InputError("convexity check needs two graphs with edges")
    union = disjoint_union(g1, g2)
    p1, p2, pu = exact_prob(g1), exact_prob(g2), exact_prob(union)
    n1, n2 = g1.n_edges, g2.n_edges
    h1, h2 = h_invariant(p1, n1), h_invariant(p2, n2)
    report = ConvexityReport(
        p1, p2, pu, h1, h2, h_invariant(pu, n1 + n2),
        (n1 * h1 + n2 * h2) / (n1 + n2),
    )
    if not (report.product_holds and report.convex_holds):
        raise VerificationError("disjoint union rule failed", **report.to_json())
    return report


@dataclass(frozen=True)
class DensityWitness:
    target: float
    n: int
    m: int
    h: float

    @property
    def error(self) -> float:
        return abs(self.h - self.target)

    def graph(self) -> Graph:
        return disjoint_union(complete_graph(self.n), Graph(2 * self.m, tuple((2 * i, 2 * i + 1) for i in range(self.m))))


def density_targets(points: int = 20, delta: float = 0.05) -> List[float]:
    return [float(t) for t in np.linspace(LOG_QUARTER + delta, LOG_THREE_QUARTERS - delta, points)]


def density_witness(target: float, eps: float = 0.02, n_max: int = 250) -> DensityWitness:
    """Smallest K_n (then best m) with h(K_n ⊔ m·L_1) within eps of the target."""
    for n in range(3, n_max + 1):
        p_complete = complete_prob(n)
        edges = comb(n, 2)
        log_p = h_invariant(p_complete, edges) * edges
        if log_p / edges > target + eps:
            continue
        m_star = (target * edges - log_p) / (LOG_THREE_QUARTERS - target)
        for m in sorted({max(0, math.floor(m_star)), max(0, math.ceil(m_star))}):
            p = p_complete * Fraction(3, 4) ** m
            h = h_invariant(p, edges + m)
            if abs(h - target) < eps:
                return DensityWitness(target, n, m, h)
    raise VerificationError("no K_n ⊔ m·L_1 witness found", target=target, eps=eps, n_max=n_max)


def density_witnesses(targets: Optional[Sequence[float]] = None, eps: float = 0.02,
                      n_max: int = 250) -> List[DensityWitness]:
    targets = density_targets() if targets is None else targets
    for t in targets:
        if not LOG_QUARTER < t <= LOG_THREE_QUARTERS:
            raise InputError("targets must lie in (log(1/4), log(3/4)]", target=t)
    return [density_witness(t, eps, n_max) for t in targets]


# Edge-subgraph pairs

@dataclass(frozen=True)
class MonotoneReport:
    pairs: int
    prob_violations: int
    h_violations: int
    examples: Tuple[Tuple[Graph, Graph], ...] = field(default=())


def monotone_pairs(n_pairs: int, n: int, seed: int, p: float = 0.5) -> MonotoneReport:
    """
    Random Γ' ⊆ Γ on the same vertices. P(Γ) <= P(Γ') always holds; h(Γ) <= h(Γ') does
    not in general (adding a disjoint edge to L_2 raises h), so h failures are counted.
    """
    rng = np.random.default_rng(seed)
    prob_violations = h_violations = 0
    examples = []
    for _ in range(n_pairs):
        big = sample_gnp(n, p, rng)
        small = edge_subgraph(big, rng.random(big.n_edges) < 0.5)
        p_big, p_small = exact_prob(big), exact_prob(small)
        prob_violations += p_big > p_small
        if big.n_edges and small.n_edges:
            if h_invariant(p_big, big.n_edges) > h_invariant(p_small, small.n_edges):
                h_violations += 1
                if len(examples) < 5:
                    examples.append((big, small))
    return MonotoneReport(n_pairs, prob_violations, h_violations, tuple(examples))
