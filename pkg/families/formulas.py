import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

import sympy
from sympy.polys.matrices import DomainMatrix

from errors import InputError, VerificationError


logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, Fraction]


def _over_qq(rows) -> DomainMatrix:
    return DomainMatrix.from_Matrix(sympy.Matrix(rows)).convert_to(sympy.QQ)


# transfer matrix propagating endpoint anomaly probabilities along a path
TRANSFER = _over_qq([[sympy.Rational(1, 2), sympy.Rational(1, 4)],
                     [sympy.Rational(1, 4), sympy.Rational(1, 4)]])

P1 = _over_qq([sympy.Rational(1, 2), sympy.Rational(1, 4)])
# columns of the single-edge table p_1(ε, ε'), indexed by ε'
P1_PAIR: Dict[int, DomainMatrix] = {
    0: _over_qq([sympy.Rational(1, 4), sympy.Rational(1, 4)]),
    1: _over_qq([sympy.Rational(1, 4), 0]),
}


def _fractions(column: DomainMatrix) -> Vector:
    return tuple(Fraction(int(x.p), int(x.q)) for x in column.to_Matrix())


@lru_cache(maxsize=256)
def transfer_power(k: int) -> DomainMatrix:
    return TRANSFER ** k


@dataclass(frozen=True)
class PathState:
    """
    Boundary probabilities of L_n: vector[ε] = p_n(ε), the probability of a flow with
    A(v_0) = ε; pair[(ε, ε')] = p_n(ε, ε') with A(v_0) = ε, A(v_n) = ε'.
    """
    n: int
    vector: Vector
    pair: Dict[Tuple[int, int], Fraction]

    @property
    def prob(self) -> Fraction:
        return self.vector[0] + self.vector[1]


def _require(condition: bool, message: str, **context):
    if not condition:
        raise InputError(message, **context)


def path_state(n: int) -> PathState:
    _require(n >= 1, "L_n requires n >= 1", n=n)
    power = transfer_power(n - 1)
    vector = _fractions(power * P1)
    pair = {}
    for end in (0, 1):
        pair[(0, end)], pair[(1, end)] = _fractions(power * P1_PAIR[end])
    return PathState(n, vector, pair)


def path_prob(n: int) -> Fraction:
    return path_state(n).prob


def path_recurrence(k: int) -> List[Fraction]:
    """p_1..p_k from x_{n+2} = (3/4) x_{n+1} - (1/16) x_n."""
    values = [Fraction(3, 4), Fraction(1, 2)]
    while len(values) < k:
        values.append(Fraction(3, 4) * values[-1] - Fraction(1, 16) * values[-2])
    return values[:k]


def generating_function_coefficients(k: int) -> List[Fraction]:
    """Taylor coefficients z^1..z^k of (12z - z^2)/(z^2 - 12z + 16)."""
    z = sympy.Symbol("z")
    series = sympy.series((12 * z - z ** 2) / (z ** 2 - 12 * z + 16), z, 0, k + 1).removeO()
    return [Fraction(int(c.p), int(c.q)) for c in (sympy.Rational(series.coeff(z, i)) for i in range(1, k + 1))]


def path_series_check(k: int) -> List[Fraction]:
    """First k values of p_n by recurrence, checked against the matrix powers."""
    _require(k >= 1, "k must be >= 1", k=k)
    series = path_recurrence(k)
    for n, value in enumerate(series, start=1):
        expected = path_prob(n)
        if value != expected:
            raise VerificationError("path recurrence disagrees with transfer matrix", n=n,
                                    recurrence=str(value), matrix=str(expected))
    return series


def star_prob(n: int) -> Fraction:
    _require(n >= 1, "S_n requires n >= 1", n=n)
    return Fraction(n + 2, 2 ** (n + 1))


def cycle_prob(n: int) -> Fraction:
    """C_n is L_n with its endpoints identified: p_n(0,0) + 2 p_n(0,1)."""
    _require(n >= 3, "C_n requires n >= 3", n=n)
    pair = path_state(n).pair
    return pair[(0, 0)] + 2 * pair[(0, 1)]


def cycle_prob_by_recurrence(n: int) -> Fraction:
    _require(n >= 3, "C_n requires n >= 3", n=n)
    values = [Fraction(9, 32), Fraction(47, 256)]
    while len(values) < n - 2:
        values.append(Fraction(3, 4) * values[-1] - Fraction(1, 16) * values[-2])
    return values[n - 3]


@dataclass(frozen=True)
class CompleteState:
    """c_n(k): common value of 4^{n(n-1)/2} p_S over |S| = k in T[Q_{K_n}]."""
    n: int
    coeffs: Tuple[int, ...]

    @property
    def prob(self) -> Fraction:
        weighted = sum(comb(self.n, k) * c for k, c in enumerate(self.coeffs))
        return Fraction(weighted, 4 ** comb(self.n, 2))


_complete_cache: Dict[int, Tuple[int, ...]] = {3: (1, 2, 3, 2)}


def complete_coeffs(n: int) -> CompleteState:
    _require(n >= 3, "K_n requires n >= 3 here", n=n)
    top = max(m for m in _complete_cache if m <= n)
    coeffs = _complete_cache[top]
    # K_{m+1} is a quotient of K_m ⊔ S_m
    for m in range(top, n):
        grown = [sum(comb(k, j) * coeffs[j] for j in range(k + 1)) for k in range(m + 1)]
        grown.append(sum(k * comb(m, k) * c for k, c in enumerate(coeffs)))
        coeffs = tuple(grown)
        _complete_cache[m + 1] = coeffs
    return CompleteState(n, coeffs)


def complete_prob(n: int) -> Fraction:
    return complete_coeffs(n).prob


def complete_bounds(n: int) -> Tuple[Fraction, Fraction]:
    _require(n >= 3, "K_n requires n >= 3 here", n=n)
    scale = Fraction(1, 4 ** comb(n, 2))
    lower = (1 + Fraction(n, 2)) ** n * scale
    upper = Fraction(n + 1) ** n * scale
    value = complete_prob(n)
    if not lower <= value <= upper:
        raise VerificationError("complete graph probability escapes its bounds", n=n)
    return lower, upper


def octopus_prob(arms: Sequence[int]) -> Fraction:
    """Arms glued at an endpoint: at most one arm may carry the glue vertex's anomaly."""
    _require(len(arms) >= 3, "an octopus needs at least 3 arms", arms=list(arms))
    _require(all(n >= 1 for n in arms), "octopus arms must have length >= 1", arms=list(arms))
    return _glued_prob(arms)


def _glued_prob(arms: Sequence[int]) -> Fraction:
    vectors = [path_state(n).vector for n in arms]
    none = math.prod((v[0] for v in vectors), start=Fraction(1))
    one = sum(
        (math.prod((w[1] if i == j else w[0] for i, w in enumerate(vectors)), start=Fraction(1))
         for j in range(len(vectors))),
        Fraction(0),
    )
    return none + one


def uniform_octopus_prob(k: int, n: int) -> Fraction:
    """O_{k×n}: p_n(0)^k (1 + k p_n(1)/p_n(0))."""
    _require(k >= 3 and n >= 1, "O_{k×n} requires k >= 3 and n >= 1", k=k, n=n)
    p0, p1 = path_state(n).vector
    return p0 ** k * (1 + k * p1 / p0)


def uniform_octopus_h(k: int, n: int) -> float:
    p0, p1 = path_state(n).vector
    return _log(p0) / n + math.log(1 + k * float(p1 / p0)) / (n * k)


def dandelion_prob(n: int, m: int) -> Fraction:
    """D_{n,m}: p_n(0) (1/2)^m (1 + p_n(1)/p_n(0) + m/2)."""
    _require(n >= 1 and m >= 1, "D_{n,m} requires n >= 1 and m >= 1", n=n, m=m)
    p0, p1 = path_state(n).vector
    return p0 * Fraction(1, 2 ** m) * (1 + p1 / p0 + Fraction(m, 2))


def _log(p: Fraction) -> float:
    # math.log is exact-to-rounding on arbitrarily large ints
    return math.log(p.numerator) - math.log(p.denominator)


def h_invariant(p: Fraction, n_edges: int) -> float:
    """h = log P / N, and 0 for an edgeless graph."""
    p = Fraction(p)
    if p <= 0 or p > 1:
        raise InputError("h needs 0 < P <= 1", p=str(p))
    if n_edges == 0:
        return 0.0
    return _log(p) / n_edges


@dataclass(frozen=True)
class GrowthConstants:
    r: float
    lambda_plus: float
    lambda_minus: float
    log_quarter: float
    log_half: float
    log_three_quarters: float
    log_r: float


def transfer_eigenvalues() -> Tuple[sympy.Expr, sympy.Expr]:
    """Exact roots (3 ± √5)/8 of λ² - (3/4)λ + 1/16."""
    lam = sympy.Symbol("lambda")
    plus, minus = sorted(sympy.solve(lam ** 2 - sympy.Rational(3, 4) * lam + sympy.Rational(1, 16), lam),
                         key=lambda root: float(root), reverse=True)
    return plus, minus


def growth_constants() -> GrowthConstants:
    plus, minus = transfer_eigenvalues()
    r = float(plus)
    return GrowthConstants(
        r=r,
        lambda_plus=r,
        lambda_minus=float(minus),
        log_quarter=math.log(1 / 4),
        log_half=math.log(1 / 2),
        log_three_quarters=math.log(3 / 4),
        log_r=math.log(r),
    )
