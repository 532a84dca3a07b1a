from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

from errors import InputError


def subset_mask(subset: Iterable[int]) -> int:
    mask = 0
    for v in subset:
        mask |= 1 << v
    return mask


def mask_subset(mask: int) -> Tuple[int, ...]:
    return tuple(v for v in range(mask.bit_length()) if mask >> v & 1)


class TruncatedPolynomial:
    """
    Multilinear polynomial Σ_S p_S z^S over the rationals. Monomials are keyed by the
    bitmask of S; absent subsets have coefficient 0. Instances are never mutated.
    """
    __slots__ = ("_coeffs", "_support")

    def __init__(self, coeffs: Mapping[int, Fraction], support: int = 0):
        clean = {mask: Fraction(c) for mask, c in coeffs.items() if c != 0}
        for mask in clean:
            support |= mask
        self._coeffs = MappingProxyType(clean)
        self._support = support

    @classmethod
    def one(cls) -> "TruncatedPolynomial":
        return cls({0: Fraction(1)})

    @classmethod
    def from_subsets(cls, coeffs: Mapping[Iterable[int], Fraction]) -> "TruncatedPolynomial":
        return cls({subset_mask(s): Fraction(c) for s, c in coeffs.items()})

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        return self._coeffs

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(mask_subset(self._support))

    @property
    def support_mask(self) -> int:
        return self._support

    def coefficient(self, subset: Iterable[int]) -> Fraction:
        return self._coeffs.get(subset_mask(subset), Fraction(0))

    def subsets(self) -> Dict[Tuple[int, ...], Fraction]:
        return {mask_subset(mask): c for mask, c in sorted(self._coeffs.items())}

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for mask, c in self._coeffs.items():
            term = c
            for v in mask_subset(mask):
                term *= point.get(v, 0)
            total += term
        return total

    def at_one(self) -> Fraction:
        return sum(self._coeffs.values(), Fraction(0))

    def scaled(self, factor: Fraction) -> "TruncatedPolynomial":
        return TruncatedPolynomial({m: c * factor for m, c in self._coeffs.items()}, self._support)

    def __eq__(self, other):
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        return dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __len__(self):
        return len(self._coeffs)

    def __repr__(self):
        terms = " + ".join(f"{c}*z{list(mask_subset(m))}" for m, c in sorted(self._coeffs.items()))
        return f"TruncatedPolynomial({terms or '0'})"

    def to_json(self) -> dict:
        return {
            "coeffs": [
                {"subset": list(mask_subset(m)), "num": str(c.numerator), "den": str(c.denominator)}
                for m, c in sorted(self._coeffs.items(), key=lambda item: (bin(item[0]).count("1"), item[0]))
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedPolynomial":
        try:
            return cls({
                subset_mask(term["subset"]): Fraction(int(term["num"]), int(term["den"]))
                for term in data["coeffs"]
            })
        except (KeyError, ValueError, ZeroDivisionError, TypeError) as e:
            raise InputError("malformed polynomial JSON") from e


@dataclass(frozen=True)
class AnomalyConstraint:
    """Prescribed anomaly values f: S -> {0, 1} on a vertex subset S."""
    values: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        vertices = [v for v, _ in self.values]
        if len(set(vertices)) != len(vertices):
            raise InputError("a vertex appears twice in the constraint")
        if any(a < 0 for _, a in self.values):
            raise InputError("anomaly values are non-negative")

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "AnomalyConstraint":
        return cls(tuple(sorted(mapping.items())))

    @property
    def subset(self) -> List[int]:
        return [v for v, _ in self.values]

    @property
    def is_admissible(self) -> bool:
        """Profiles with max f > 1 carry probability 0."""
        return all(a <= 1 for _, a in self.values)

    @property
    def subset_mask(self) -> int:
        return subset_mask(self.subset)

    @property
    def ones_mask(self) -> int:
        return subset_mask(v for v, a in self.values if a == 1)
