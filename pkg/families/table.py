from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, List, Tuple

from . import formulas


@dataclass(frozen=True)
class FamilyRow:
    family: str
    params: str
    N: int
    P_num: str
    P_den: str
    P_float: float
    h: float

    @classmethod
    def of(cls, family: str, params: Tuple[int, ...], n_edges: int, p: Fraction) -> "FamilyRow":
        return cls(
            family=family,
            params=",".join(str(x) for x in params),
            N=n_edges,
            P_num=str(p.numerator),
            P_den=str(p.denominator),
            P_float=float(p),
            h=formulas.h_invariant(p, n_edges),
        )

    def to_dict(self) -> dict:
        return asdict(self)


COLUMNS = ["family", "params", "N", "P_num", "P_den", "P_float", "h"]


def _entries(n_max: int) -> Iterator[Tuple[str, Tuple[int, ...], int, Callable[[], Fraction]]]:
    for n in range(1, n_max + 1):
        yield "path", (n,), n, lambda n=n: formulas.path_prob(n)
        yield "star", (n,), n, lambda n=n: formulas.star_prob(n)
    for n in range(3, n_max + 1):
        yield "cycle", (n,), n, lambda n=n: formulas.cycle_prob(n)
        yield "complete", (n,), comb(n, 2), lambda n=n: formulas.complete_prob(n)
    for k in range(3, n_max + 1):
        for n in range(1, n_max // k + 1):
            arms = (n,) * k
            yield "octopus", arms, n * k, lambda k=k, n=n: formulas.uniform_octopus_prob(k, n)
    for n in range(1, n_max):
        for m in range(1, n_max - n + 1):
            yield "dandelion", (n, m), n + m, lambda n=n, m=m: formulas.dandelion_prob(n, m)


def family_table(n_max: int) -> List[FamilyRow]:
    """Exact values of every named family with at most n_max as its size parameter."""
    return [FamilyRow.of(name, params, n_edges, value()) for name, params, n_edges, value in _entries(n_max)]
