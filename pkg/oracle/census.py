"""Exhaustive enumeration of orientation prescriptions; ground truth for every other engine."""
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from complexes.builders import graph_hasse, hasse as build_hasse
from complexes.models import Graph, HasseDiagram, SimplicialComplex
from errors import InputError, SizeLimitError
from flows.engine import is_acyclic
from flows.models import OrientationPrescription
from settings import settings


logger = logging.getLogger(__name__)

CHUNKS_PER_JOB = 4


@dataclass(frozen=True)
class FlowCensus:
    total: int
    flows: int
    acyclic: int
    subset: Tuple[int, ...] = ()
    # anomaly profile on `subset` (one 0/1 per vertex) -> number of flows showing it
    profiles: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    @property
    def probability(self) -> Fraction:
        return Fraction(self.flows, self.total)

    def profile_probability(self, profile: Sequence[int]) -> Fraction:
        return Fraction(self.profiles.get(tuple(profile), 0), self.total)

    def to_json(self) -> dict:
        return {
            "total": str(self.total),
            "flows": str(self.flows),
            "acyclic": str(self.acyclic),
            "subset": list(self.subset),
            "profiles": [
                {"profile": list(profile), "count": str(count)}
                for profile, count in sorted(self.profiles.items())
            ],
        }


def _node_masks(hasse: HasseDiagram) -> List[int]:
    return [sum(1 << i for i in edges) for edges in hasse.node_edges]


def _census_range(hasse: HasseDiagram, subset: Tuple[int, ...], lo: int, hi: int,
                  count_acyclic: bool) -> Tuple[int, int, Counter]:
    node_masks = _node_masks(hasse)
    flows = acyclic = 0
    profiles = Counter()
    for mask in range(lo, hi):
        for node_mask in node_masks:
            hit = mask & node_mask
            if hit & (hit - 1):
                break
        else:
            flows += 1
            if subset:
                profiles[tuple(1 if mask & node_masks[v] else 0 for v in subset)] += 1
            if count_acyclic:
                omega = OrientationPrescription.from_negative_mask(mask, hasse.n_edges)
                acyclic += is_acyclic(omega, hasse)
    return flows, acyclic, profiles


def _ranges(total: int, pieces: int) -> List[Tuple[int, int]]:
    step = -(-total // pieces)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _census(hasse: HasseDiagram, subset: Tuple[int, ...], limit: Optional[int],
            jobs: int, count_acyclic: bool) -> FlowCensus:
    limit = settings.ORACLE_LIMIT if limit is None else limit
    total = 1 << hasse.n_edges
    if total > limit:
        raise SizeLimitError(
            "too many prescriptions for brute force; use the exact polynomial engine or Monte Carlo",
            prescriptions=str(total), limit=str(limit),
        )
    flows = acyclic = 0
    profiles = Counter()
    if jobs <= 1:
        flows, acyclic, profiles = _census_range(hasse, subset, 0, total, count_acyclic)
    else:
        ranges = _ranges(total, jobs * CHUNKS_PER_JOB)
        logger.debug("census: %d prescriptions in %d ranges on %d workers", total, len(ranges), jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_census_range, hasse, subset, lo, hi, count_acyclic) for lo, hi in ranges]
            for future in futures:
                f, a, p = future.result()
                flows += f
                acyclic += a
                profiles.update(p)
    logger.info("census: %d of %d prescriptions are flows", flows, total)
    return FlowCensus(total, flows, acyclic if count_acyclic else 0, subset, dict(profiles))


def brute_force_census(g: Graph, subset: Optional[Iterable[int]] = None, limit: Optional[int] = None,
                       jobs: int = 1, count_acyclic: bool = True) -> FlowCensus:
    """All 4^N prescriptions of a graph; profiles are restricted to `subset`."""
    subset = tuple(sorted(set(subset or ())))
    if any(v < 0 or v >= g.n_vertices for v in subset):
        raise InputError("census subset vertex out of range", n_vertices=g.n_vertices)
    # vertex v is Hasse node v, so node masks index straight by vertex id
    return _census(graph_hasse(g), subset, limit, jobs, count_acyclic)


def brute_force_complex(c: SimplicialComplex, limit: Optional[int] = None, jobs: int = 1,
                        count_acyclic: bool = True) -> FlowCensus:
    """All 2^|Hasse edges| prescriptions of a complex."""
    return _census(build_hasse(c), (), limit, jobs, count_acyclic)
