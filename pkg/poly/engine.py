import logging
from collections import Counter, defaultdict
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from complexes.builders import projection_from_partition
from complexes.models import Graph
from errors import InputError
from .models import AnomalyConstraint, TruncatedPolynomial, mask_subset


logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)


def edge_poly(v0: int, v1: int) -> TruncatedPolynomial:
    """Q_e = (1/4)(1 + z_v0 + z_v1)."""
    if v0 == v1:
        raise InputError("edge polynomial needs two distinct endpoints", vertex=v0)
    return TruncatedPolynomial({0: QUARTER, 1 << v0: QUARTER, 1 << v1: QUARTER})


def truncated_product(a: TruncatedPolynomial, b: TruncatedPolynomial) -> TruncatedPolynomial:
    """T[a·b]: products of overlapping monomials carry a square and are dropped."""
    out = defaultdict(Fraction)
    for sa, pa in a.coeffs.items():
        for sb, pb in b.coeffs.items():
            if sa & sb == 0:
                out[sa | sb] += pa * pb
    return TruncatedPolynomial(out, a.support_mask | b.support_mask)


def connected_edge_order(g: Graph) -> List[int]:
    """Greedy order: next is the lowest-indexed edge touching an already used vertex."""
    remaining = list(range(g.n_edges))
    touched = set()
    order = []
    while remaining:
        pick = next((e for e in remaining if touched.intersection(g.edges[e])), remaining[0])
        remaining.remove(pick)
        touched.update(g.edges[pick])
        order.append(pick)
    return order


def graph_poly(g: Graph) -> TruncatedPolynomial:
    """T[Q_Γ] = T[Π_e Q_e]."""
    poly = TruncatedPolynomial.one()
    order = connected_edge_order(g)
    for e in order:
        poly = truncated_product(poly, edge_poly(*g.edges[e]))
    logger.debug("graph_poly: %d edges, %d monomials", g.n_edges, len(poly))
    return poly


def _eliminate(poly: TruncatedPolynomial, v: int) -> TruncatedPolynomial:
    """Set z_v = 1: only valid once no further factor mentions v."""
    keep = ~(1 << v)
    out = defaultdict(Fraction)
    for mask, c in poly.coeffs.items():
        out[mask & keep] += c
    return TruncatedPolynomial(out)


def prob(g: Graph) -> Fraction:
    """
    P(Γ) = T[Q_Γ](1). Each vertex is evaluated at 1 as soon as its last edge is multiplied
    in, so paths and stars stay linear in size.
    """
    if g.n_edges == 0:
        return Fraction(1)
    pending = Counter(v for edge in g.edges for v in edge)
    poly = TruncatedPolynomial.one()
    peak = 1
    for e in connected_edge_order(g):
        poly = truncated_product(poly, edge_poly(*g.edges[e]))
        peak = max(peak, len(poly))
        for v in g.edges[e]:
            pending[v] -= 1
            if not pending[v]:
                poly = _eliminate(poly, v)
    logger.debug("prob: %d edges, at most %d monomials", g.n_edges, peak)
    return poly.at_one()


def profile_prob(g: Graph, constraint: AnomalyConstraint, poly: Optional[TruncatedPolynomial] = None) -> Fraction:
    """
    Joint probability that ω is a flow and A_ω agrees with the constraint on its subset.
    Vertices outside the subset are summed over.
    """
    if any(v >= g.n_vertices or v < 0 for v in constraint.subset):
        raise InputError("constraint vertex out of range", n_vertices=g.n_vertices)
    if not constraint.is_admissible:
        return Fraction(0)
    if poly is None:
        poly = graph_poly(g)
    s, ones = constraint.subset_mask, constraint.ones_mask
    return sum((c for mask, c in poly.coeffs.items() if mask & s == ones), Fraction(0))


def identify(poly: TruncatedPolynomial, projection: Sequence[int]) -> TruncatedPolynomial:
    """
    Substitute z_v -> z_{π(v)} and re-truncate. The coefficients of the result are the
    quotient profile probabilities P_V̄(Γ̄ | f̄).
    """
    out = defaultdict(Fraction)
    for mask, c in poly.coeffs.items():
        image = 0
        for v in mask_subset(mask):
            bit = 1 << projection[v]
            if image & bit:
                break
            image |= bit
        else:
            out[image] += c
    return TruncatedPolynomial(out)


def quotient_prob(g: Graph, partition: Iterable[Iterable[int]]) -> Fraction:
    """P of Γ/~ from the cover's polynomial; the quotient need not be a simple graph."""
    projection = projection_from_partition(g.n_vertices, list(partition))
    if g.n_edges == 0:
        return Fraction(1)
    return identify(graph_poly(g), projection).at_one()
