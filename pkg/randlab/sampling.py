import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import norm

from complexes.models import Edge, Graph
from errors import InputError
from settings import settings


logger = logging.getLogger(__name__)

Z95 = float(norm.ppf(0.975))

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


@dataclass(frozen=True)
class HEstimate:
    """Monte Carlo h: a point value when flows were hit, otherwise only an upper bound."""
    point: Optional[float]
    upper: float


@dataclass(frozen=True)
class McEstimate:
    samples: int
    hits: int
    seed: int
    half_width: float
    ci_low: float
    ci_high: float
    method: str

    @property
    def estimate(self) -> float:
        return self.hits / self.samples

    def h(self, n_edges: int) -> HEstimate:
        if n_edges == 0:
            return HEstimate(0.0, 0.0)
        upper = math.log(self.ci_high) / n_edges
        if self.hits == 0:
            return HEstimate(None, upper)
        return HEstimate(math.log(self.estimate) / n_edges, upper)

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "hits": self.hits,
            "estimate": self.estimate,
            "ci": self.half_width,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "method": self.method,
            "seed": self.seed,
        }


def confidence_interval(hits: int, samples: int) -> Tuple[float, float, float, str]:
    """95% normal interval; Wilson score interval when no or every sample hit."""
    p = hits / samples
    if 0 < hits < samples:
        half = Z95 * math.sqrt(p * (1 - p) / samples)
        return half, max(0.0, p - half), min(1.0, p + half), "normal"
    z2 = Z95 * Z95
    center = (p + z2 / (2 * samples)) / (1 + z2 / samples)
    half = Z95 / (1 + z2 / samples) * math.sqrt(p * (1 - p) / samples + z2 / (4 * samples * samples))
    return half, max(0.0, center - half), min(1.0, center + half), "wilson"


def _vertex_columns(g: Graph) -> List[np.ndarray]:
    # column 2e + i of a sign block is the incidence (i-th endpoint of e, e)
    columns = [[] for _ in range(g.n_vertices)]
    for e, edge in enumerate(g.edges):
        for i, v in enumerate(edge):
            columns[v].append(2 * e + i)
    return [np.array(c, dtype=np.intp) for c in columns if len(c) > 1]


def count_flows(g: Graph, negative: np.ndarray) -> int:
    """Rows of `negative` (samples × 2N booleans, True where ω = -1) that are flows."""
    ok = ~(negative[:, 0::2] & negative[:, 1::2]).any(axis=1)
    for columns in _vertex_columns(g):
        ok &= negative[:, columns].sum(axis=1) <= 1
    return int(ok.sum())


def _mc_block(g: Graph, size: int, seed_seq: np.random.SeedSequence) -> int:
    rng = np.random.default_rng(seed_seq)
    negative = rng.integers(0, 2, size=(size, 2 * g.n_edges), dtype=np.uint8).astype(bool)
    return count_flows(g, negative)


def mc_prob(g: Graph, samples: int, seed: int, jobs: int = 1) -> McEstimate:
    """
    Uniform prescriptions (each sign an independent fair coin), drawn in fixed-size blocks.
    Block i uses the i-th child of SeedSequence(seed), so the estimate does not depend on jobs.
    """
    if samples < 1:
        raise InputError("samples must be >= 1", samples=samples)
    if g.n_edges == 0:
        hits = samples
    else:
        chunk = settings.MC_CHUNK_SIZE
        sizes = [min(chunk, samples - lo) for lo in range(0, samples, chunk)]
        children = np.random.SeedSequence(seed).spawn(len(sizes))
        if jobs <= 1:
            hits = sum(_mc_block(g, size, child) for size, child in zip(sizes, children))
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                hits = sum(pool.map(_mc_block, [g] * len(sizes), sizes, children))
    half, low, high, method = confidence_interval(hits, samples)
    logger.debug("mc_prob: %d/%d hits (seed %d)", hits, samples, seed)
    return McEstimate(samples, hits, seed, half, low, high, method)


def _pairs(n: int) -> List[Edge]:
    return list(combinations(range(n), 2))


def sample_gnp(n: int, p: float, seed: SeedLike) -> Graph:
    """G(n, p): each of the C(n,2) pairs, in lexicographic order, kept with probability p."""
    if not 0 <= p <= 1:
        raise InputError("p must lie in [0, 1]", p=p)
    if n < 0:
        raise InputError("n must be non-negative", n=n)
    rng = np.random.default_rng(seed)
    pairs = _pairs(n)
    keep = rng.random(len(pairs)) < p
    return Graph(n, tuple(pair for pair, k in zip(pairs, keep) if k))


def sample_gnN(n: int, N: int, seed: SeedLike) -> Graph:
    """G(n, N): uniform over graphs on n vertices with exactly N edges."""
    pairs = _pairs(n)
    if not 0 <= N <= len(pairs):
        raise InputError("N must lie in [0, n(n-1)/2]", n=n, N=N)
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(pairs), size=N, replace=False)
    return Graph(n, tuple(sorted(pairs[i] for i in chosen)))


def edge_subgraph(g: Graph, keep: Sequence[bool]) -> Graph:
    return Graph(g.n_vertices, tuple(edge for edge, k in zip(g.edges, keep) if k))
