import logging
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel

from complexes.models import Graph
from errors import InputError
from families.formulas import h_invariant
from oracle.census import brute_force_census
from poly.engine import prob as poly_prob
from randlab.sampling import McEstimate, mc_prob
from settings import settings


logger = logging.getLogger(__name__)

ENGINES = ("exact", "brute", "mc", "auto")


def decimal_string(p: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(p.numerator) / Decimal(p.denominator))


class ProbReport(BaseModel):
    engine: str
    n_vertices: int
    n_edges: int
    p: Optional[str] = None
    p_num: Optional[str] = None
    p_den: Optional[str] = None
    p_decimal: Optional[str] = None
    h: Optional[float] = None
    h_upper: Optional[float] = None
    samples: Optional[int] = None
    hits: Optional[int] = None
    ci: Optional[float] = None
    seed: Optional[int] = None


@dataclass(frozen=True)
class ProbResult:
    engine: str
    graph: Graph
    exact: Optional[Fraction] = None
    mc: Optional[McEstimate] = None

    @property
    def h(self) -> Optional[float]:
        if self.exact is not None:
            return h_invariant(self.exact, self.graph.n_edges)
        return self.mc.h(self.graph.n_edges).point

    @property
    def h_upper(self) -> float:
        if self.exact is not None:
            return self.h
        return self.mc.h(self.graph.n_edges).upper

    def report(self) -> ProbReport:
        report = ProbReport(
            engine=self.engine,
            n_vertices=self.graph.n_vertices,
            n_edges=self.graph.n_edges,
            h=self.h,
            h_upper=self.h_upper,
        )
        if self.exact is not None:
            report.p = f"{self.exact.numerator}/{self.exact.denominator}"
            report.p_num = str(self.exact.numerator)
            report.p_den = str(self.exact.denominator)
            report.p_decimal = decimal_string(self.exact)
        else:
            report.p_decimal = f"{self.mc.estimate:.12g}"
            report.samples = self.mc.samples
            report.hits = self.mc.hits
            report.ci = self.mc.half_width
            report.seed = self.mc.seed
        return report


def resolve_engine(g: Graph, engine: str, limit: Optional[int] = None) -> str:
    if engine not in ENGINES:
        raise InputError(f"unknown engine '{engine}'", known=list(ENGINES))
    if engine != "auto":
        return engine
    if g.n_vertices <= settings.POLY_MAX_VERTICES:
        return "exact"
    limit = settings.ORACLE_LIMIT if limit is None else limit
    return "brute" if 4 ** g.n_edges <= limit else "mc"


def compute_prob(g: Graph, engine: str = "exact", seed: Optional[int] = None,
                 samples: Optional[int] = None, limit: Optional[int] = None, jobs: int = 1) -> ProbResult:
    engine = resolve_engine(g, engine, limit)
    logger.info("computing P on %d vertices / %d edges with engine %s", g.n_vertices, g.n_edges, engine)
    if engine == "exact":
        return ProbResult(engine, g, exact=poly_prob(g))
    if engine == "brute":
        census = brute_force_census(g, limit=limit, jobs=jobs, count_acyclic=False)
        return ProbResult(engine, g, exact=census.probability)
    if seed is None:
        raise InputError("the Monte Carlo engine requires a seed")
    samples = settings.DEFAULT_SAMPLES if samples is None else samples
    return ProbResult(engine, g, mc=mc_prob(g, samples, seed, jobs=jobs))
