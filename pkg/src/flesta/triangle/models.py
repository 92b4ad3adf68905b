"""Data models for exact triangles and their long exact sequences."""

import logging
from fractions import Fraction
from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..complexes.models import FilteredComplex, FilteredMap
from ..exceptions import InputError
from ..linalg import NovikovMatrix
from ..novikov import NovikovScalar, as_fraction, format_fraction, rational_string
from ..serialization import input_error_from_validation

logger = logging.getLogger(__name__)


class TriangleData(BaseModel):
    """Maps b: C' → C and c: C → C'' with a homotopy h: C' → C'' of degree -1.

    The intended identity is c∘b = d''∘h + h∘d'.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    c_prime: FilteredComplex
    middle: FilteredComplex
    c_double_prime: FilteredComplex
    b: FilteredMap
    c: FilteredMap
    h: FilteredMap
    epsilon: Fraction

    @field_validator("epsilon", mode="before")
    @classmethod
    def parse_epsilon(cls, v: Any) -> Fraction:
        return as_fraction(v)

    @field_validator("epsilon")
    @classmethod
    def epsilon_must_be_positive(cls, v: Fraction) -> Fraction:
        if v <= 0:
            raise ValueError("ε must be positive")
        return v

    @model_validator(mode="after")
    def check_maps(self) -> "TriangleData":
        expected = {
            "b": (self.c_prime, self.middle, 0),
            "c": (self.middle, self.c_double_prime, 0),
            "h": (self.c_prime, self.c_double_prime, -1),
        }
        for name, (source, target, degree) in expected.items():
            f: FilteredMap = getattr(self, name)
            if f.source.generators != source.generators or f.target.generators != target.generators:
                raise ValueError(f"map {name} has the wrong source or target")
            if f.degree != degree:
                raise ValueError(f"map {name} must have degree {degree}, got {f.degree}")
        return self

    @property
    def cap(self) -> Fraction:
        return min(self.c_prime.cap, self.middle.cap, self.c_double_prime.cap)

    def degree_range(self) -> List[int]:
        degrees = set(self.c_prime.degrees()) | set(self.middle.degrees()) | set(self.c_double_prime.degrees())
        if not degrees:
            return []
        return list(range(min(degrees), max(degrees) + 1))

    def to_json(self) -> Dict[str, Any]:
        return {
            "Cprime": self.c_prime.to_json(),
            "C": self.middle.to_json(),
            "Cdoubleprime": self.c_double_prime.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "h": self.h.to_json(),
            "epsilon": format_fraction(self.epsilon),
        }

    @classmethod
    def from_json(cls, data: Any, pointer: str = "") -> "TriangleData":
        try:
            doc = TriangleDocument.model_validate(data)
        except ValidationError as e:
            raise input_error_from_validation(e, pointer) from e
        c_prime = FilteredComplex.from_json(doc.Cprime, f"{pointer}/Cprime")
        middle = FilteredComplex.from_json(doc.C, f"{pointer}/C")
        c_double_prime = FilteredComplex.from_json(doc.Cdoubleprime, f"{pointer}/Cdoubleprime")
        b = FilteredMap.from_json(doc.b, c_prime, middle, f"{pointer}/b")
        c = FilteredMap.from_json(doc.c, middle, c_double_prime, f"{pointer}/c")
        h = FilteredMap.from_json(doc.h, c_prime, c_double_prime, f"{pointer}/h")
        for name, f, degree in (("b", b, 0), ("c", c, 0), ("h", h, -1)):
            if f.degree != degree:
                raise InputError(f"map {name} must have degree {degree}", f"{pointer}/{name}/degree")
        epsilon = Fraction(doc.epsilon)
        if epsilon <= 0:
            raise InputError("epsilon must be positive", f"{pointer}/epsilon")
        return cls(c_prime=c_prime, middle=middle, c_double_prime=c_double_prime,
                   b=b, c=c, h=h, epsilon=epsilon)


class TriangleDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    Cprime: Any
    C: Any
    Cdoubleprime: Any
    b: Any
    c: Any
    h: Any
    epsilon: str

    @field_validator("epsilon", mode="before")
    @classmethod
    def check_epsilon(cls, v: Any) -> str:
        return rational_string(v)


class HypothesisItem(BaseModel):
    """One numbered condition of the triangle hypotheses."""

    condition: int
    name: str
    passed: bool
    witness: str = ""


class HypothesisReport(BaseModel):
    passed: bool
    items: List[HypothesisItem] = Field(default_factory=list)
    note: str = ""

    @property
    def failures(self) -> List[HypothesisItem]:
        return [item for item in self.items if not item.passed]

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "items": [item.model_dump() for item in self.items],
            "note": self.note,
        }


class LESNode(BaseModel):
    """H^k of one of the three complexes, with the exactness verdict at it."""

    index: int
    label: str
    degree: int
    rank: int
    incoming_rank: int = 0
    outgoing_rank: int = 0
    composition_zero: bool = True

    @property
    def exact(self) -> bool:
        return self.composition_zero and self.incoming_rank + self.outgoing_rank == self.rank


class LESMap(BaseModel):
    """A map between consecutive nodes, in homology-basis coordinates."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    source: int
    target: int
    matrix: List[List[NovikovScalar]] = Field(default_factory=list)
    rank: int = 0
    defined: bool = True

    @property
    def is_zero(self) -> bool:
        return all(x.is_zero for row in self.matrix for x in row)


class LongExactSequence(BaseModel):
    """… → H^k(C') → H^k(C) → H^k(C'') → H^{k+1}(C') → …"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    nodes: List[LESNode] = Field(default_factory=list)
    maps: List[LESMap] = Field(default_factory=list)
    cap: Fraction = Fraction(10)

    @property
    def exact(self) -> bool:
        return all(node.exact for node in self.nodes)

    def rank_profile(self) -> List[int]:
        return [node.rank for node in self.nodes]

    def connecting_maps(self) -> List[LESMap]:
        return [m for m in self.maps if m.name == "∂"]

    def to_json(self) -> Dict[str, Any]:
        return {
            "exact": self.exact,
            "cap": format_fraction(self.cap),
            "nodes": [
                {
                    "index": n.index,
                    "label": n.label,
                    "degree": n.degree,
                    "rank": n.rank,
                    "incoming_rank": n.incoming_rank,
                    "outgoing_rank": n.outgoing_rank,
                    "exact": n.exact,
                }
                for n in self.nodes
            ],
            "maps": [
                {
                    "name": m.name,
                    "source": m.source,
                    "target": m.target,
                    "rank": m.rank,
                    "defined": m.defined,
                    "matrix": [[x.to_json() for x in row] for row in m.matrix],
                }
                for m in self.maps
            ],
        }


def matrix_rank(matrix: List[List[NovikovScalar]], cap: Fraction) -> int:
    if not matrix or not matrix[0]:
        return 0
    return NovikovMatrix(matrix, cap).rank()
