from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from complexes.models import Face, Graph, HasseDiagram
from errors import InputError


@dataclass(frozen=True)
class OrientationPrescription:
    """±1 per Hasse edge, in canonical Hasse edge order."""
    signs: Tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise InputError("orientation signs must be +1 or -1")

    @classmethod
    def trivial(cls, hasse: HasseDiagram) -> "OrientationPrescription":
        return cls((1,) * hasse.n_edges)

    @classmethod
    def from_negative_mask(cls, mask: int, length: int) -> "OrientationPrescription":
        return cls(tuple(-1 if mask >> i & 1 else 1 for i in range(length)))

    @classmethod
    def from_edge_signs(cls, g: Graph, edge_signs: Sequence[Sequence[int]]) -> "OrientationPrescription":
        """[[s_low, s_high], ...] aligned with the graph's canonical edge order."""
        if len(edge_signs) != g.n_edges:
            raise InputError("edge_signs must have one pair per edge", expected=g.n_edges, got=len(edge_signs))
        flat = []
        for pair in edge_signs:
            if len(pair) != 2:
                raise InputError("each edge_signs entry must be [s_low, s_high]")
            flat.extend(pair)
        return cls(tuple(flat))

    @property
    def sign_count(self) -> int:
        return sum(1 for s in self.signs if s == -1)

    @property
    def negative_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.signs) if s == -1)

    def flipped(self, index: int) -> "OrientationPrescription":
        signs = list(self.signs)
        signs[index] = -signs[index]
        return OrientationPrescription(tuple(signs))

    def to_edge_signs(self) -> List[List[int]]:
        return [list(self.signs[i:i + 2]) for i in range(0, len(self.signs), 2)]

    def check(self, hasse: HasseDiagram):
        if len(self.signs) != hasse.n_edges:
            raise InputError(
                "prescription length does not match the Hasse diagram",
                expected=hasse.n_edges, got=len(self.signs),
            )


@dataclass(frozen=True)
class AnomalyProfile:
    """
    Per face (canonical face order): `up` counts A_{>σ}(ω), cofaces τ with ω(τσ) = -1;
    `down` counts A_{<σ}(ω), faces τ with ω(στ) = -1.
    """
    faces: Tuple[Face, ...]
    up: Tuple[int, ...]
    down: Tuple[int, ...]

    @property
    def total(self) -> Tuple[int, ...]:
        return tuple(u + d for u, d in zip(self.up, self.down))

    def __getitem__(self, face: Face) -> int:
        return self.total[self.faces.index(tuple(face))]

    def to_json(self) -> List[Dict]:
        return [
            {"face": list(face), "up": u, "down": d}
            for face, u, d in zip(self.faces, self.up, self.down)
        ]


@dataclass(frozen=True)
class MorseFunction:
    faces: Tuple[Face, ...]
    values: Tuple[int, ...]

    def __getitem__(self, face: Face) -> int:
        return self.values[self.faces.index(tuple(face))]

    def to_json(self) -> dict:
        return {"values": [{"face": list(face), "f": f} for face, f in zip(self.faces, self.values)]}


@dataclass(frozen=True)
class Flip:
    edge: int
    cycle: Tuple[int, ...]


@dataclass(frozen=True)
class Deformation:
    result: OrientationPrescription
    flips: Tuple[Flip, ...]

    @property
    def iterations(self) -> int:
        return len(self.flips)


@dataclass(frozen=True)
class InducedFlow:
    prescription: OrientationPrescription
    is_morse: bool
