"""
Data models for filtered complexes over Novikov rings.

A :class:`FilteredComplex` is a free graded module on finitely many
generators, each carrying an action level, with a sparse differential
``d(src) = Σ d[src, dst]·dst``. The filtration puts T^a·g in F^{a + level(g)}.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..exceptions import InputError
from ..novikov import NovikovScalar, PiGroup, as_fraction, format_fraction, rational_string
from ..serialization import input_error_from_validation

logger = logging.getLogger(__name__)

Matrix = Dict[Tuple[str, str], NovikovScalar]


class Generator(BaseModel):
    """A graded generator with an action level."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = Field(..., min_length=1)
    degree: int
    level: Fraction = Fraction(0)

    @field_validator("level", mode="before")
    @classmethod
    def parse_level(cls, v: Any) -> Fraction:
        return as_fraction(v)

    @property
    def parity(self) -> int:
        return self.degree % 2


def effective_order(src: Generator, dst: Generator, energy: Fraction) -> Fraction:
    """Filtration shift of the term T^energy·dst in the image of src."""
    return dst.level + energy - src.level


class FilteredComplex(BaseModel):
    """A finitely generated filtered cochain complex truncated at ``cap``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    generators: Tuple[Generator, ...]
    differential: Dict[Tuple[str, str], NovikovScalar] = Field(default_factory=dict)
    cap: Fraction = Fraction(10)

    @field_validator("cap", mode="before")
    @classmethod
    def parse_cap(cls, v: Any) -> Fraction:
        return as_fraction(v)

    @model_validator(mode="after")
    def check_references(self) -> "FilteredComplex":
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        if self.cap <= 0:
            raise ValueError("cap must be positive")
        known = set(names)
        for src, dst in self.differential:
            if src not in known or dst not in known:
                raise ValueError(f"differential entry ({src}, {dst}) references an unknown generator")
        return self

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    @property
    def by_name(self) -> Dict[str, Generator]:
        return {g.name: g for g in self.generators}

    def degrees(self) -> List[int]:
        return sorted({g.degree for g in self.generators})

    def in_degree(self, p: int) -> List[Generator]:
        """Generators of degree p in name order."""
        return sorted((g for g in self.generators if g.degree == p), key=lambda g: g.name)

    def entry(self, src: str, dst: str) -> NovikovScalar:
        return self.differential.get((src, dst), NovikovScalar.zero(self.cap))

    def nonzero_entries(self) -> Iterable[Tuple[str, str, NovikovScalar]]:
        for (src, dst), scalar in sorted(self.differential.items()):
            if not scalar.is_zero:
                yield src, dst, scalar

    def support_levels(self) -> List[Fraction]:
        """Distinct generator levels (the support of the complex)."""
        return sorted({g.level for g in self.generators})

    def with_differential(self, differential: Matrix) -> "FilteredComplex":
        return FilteredComplex(generators=self.generators, differential=_clean(differential), cap=self.cap)

    def to_json(self) -> Dict[str, Any]:
        return {
            "generators": [
                {"name": g.name, "degree": g.degree, "level": format_fraction(g.level)} for g in self.generators
            ],
            "differential": [
                {"src": src, "dst": dst, "scalar": scalar.to_json()} for src, dst, scalar in self.nonzero_entries()
            ],
            "cap": format_fraction(self.cap),
        }

    @classmethod
    def from_json(cls, data: Any, pointer: str = "") -> "FilteredComplex":
        try:
            doc = ComplexDocument.model_validate(data)
        except ValidationError as e:
            raise input_error_from_validation(e, pointer) from e
        return doc.to_complex(pointer)


def _clean(matrix: Matrix) -> Matrix:
    return {k: v for k, v in matrix.items() if not v.is_zero}


class FilteredMap(BaseModel):
    """A module map between filtered complexes, ``f(src) = Σ matrix[src, dst]·dst``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: FilteredComplex
    target: FilteredComplex
    matrix: Dict[Tuple[str, str], NovikovScalar] = Field(default_factory=dict)
    degree: int = 0

    @model_validator(mode="after")
    def check_references(self) -> "FilteredMap":
        src_names = set(self.source.names)
        dst_names = set(self.target.names)
        for src, dst in self.matrix:
            if src not in src_names or dst not in dst_names:
                raise ValueError(f"map entry ({src}, {dst}) references an unknown generator")
        return self

    @property
    def cap(self) -> Fraction:
        return min(self.source.cap, self.target.cap)

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.matrix.values())

    def nonzero_entries(self) -> Iterable[Tuple[str, str, NovikovScalar]]:
        for (src, dst), scalar in sorted(self.matrix.items()):
            if not scalar.is_zero:
                yield src, dst, scalar

    def entry(self, src: str, dst: str) -> NovikovScalar:
        return self.matrix.get((src, dst), NovikovScalar.zero(self.cap))

    def with_matrix(self, matrix: Matrix) -> "FilteredMap":
        return FilteredMap(source=self.source, target=self.target, matrix=_clean(matrix), degree=self.degree)

    def __add__(self, other: "FilteredMap") -> "FilteredMap":
        merged: Matrix = dict(self.matrix)
        for key, scalar in other.matrix.items():
            merged[key] = merged[key] + scalar if key in merged else scalar
        return self.with_matrix(merged)

    def scale(self, unit: NovikovScalar) -> "FilteredMap":
        return self.with_matrix({k: (v * unit).truncate(self.cap) for k, v in self.matrix.items()})

    def to_json(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "matrix": [{"src": s, "dst": d, "scalar": v.to_json()} for s, d, v in self.nonzero_entries()],
        }

    @classmethod
    def from_json(cls, data: Any, source: FilteredComplex, target: FilteredComplex,
                  pointer: str = "") -> "FilteredMap":
        try:
            doc = MapDocument.model_validate(data)
        except ValidationError as e:
            raise input_error_from_validation(e, pointer) from e
        matrix: Matrix = {}
        for i, entry in enumerate(doc.matrix):
            scalar = NovikovScalar.from_json(entry.scalar, f"{pointer}/matrix/{i}/scalar")
            if entry.src not in source.by_name:
                raise InputError(f"unknown source generator '{entry.src}'", f"{pointer}/matrix/{i}/src")
            if entry.dst not in target.by_name:
                raise InputError(f"unknown target generator '{entry.dst}'", f"{pointer}/matrix/{i}/dst")
            if (entry.src, entry.dst) in matrix:
                raise InputError("duplicate map entry", f"{pointer}/matrix/{i}")
            matrix[(entry.src, entry.dst)] = scalar
        return cls(source=source, target=target, matrix=_clean(matrix), degree=doc.degree)


def compose(g: FilteredMap, f: FilteredMap) -> FilteredMap:
    """The composite g∘f."""
    cap = min(f.cap, g.cap)
    out: Matrix = {}
    for src, mid, a in f.nonzero_entries():
        for mid2, dst, b in g.nonzero_entries():
            if mid2 != mid:
                continue
            term = (a * b).truncate(cap)
            out[(src, dst)] = out[(src, dst)] + term if (src, dst) in out else term
    return FilteredMap(source=f.source, target=g.target, matrix=_clean(out), degree=f.degree + g.degree)


def differential_map(c: FilteredComplex) -> FilteredMap:
    """The differential of ``c`` viewed as a degree-one filtered map."""
    return FilteredMap(source=c, target=c, matrix=dict(c.differential), degree=1)


def identity_map(c: FilteredComplex) -> FilteredMap:
    return FilteredMap(source=c, target=c, matrix={(g.name, g.name): NovikovScalar.one(c.cap) for g in c.generators})


# JSON documents


class GeneratorDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    degree: int
    level: str = "0"

    @field_validator("level", mode="before")
    @classmethod
    def check_level(cls, v: Any) -> str:
        return rational_string(v)


class EntryDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    src: str
    dst: str
    scalar: Any


class ComplexDocument(BaseModel):
    """{"generators": [...], "differential": [...], "cap": "p/q"}"""

    model_config = ConfigDict(extra="forbid")

    generators: List[GeneratorDocument]
    differential: List[EntryDocument] = Field(default_factory=list)
    cap: str = "10"

    @field_validator("cap", mode="before")
    @classmethod
    def check_cap(cls, v: Any) -> str:
        return rational_string(v)

    def to_complex(self, pointer: str = "") -> FilteredComplex:
        names: Dict[str, int] = {}
        for i, g in enumerate(self.generators):
            if g.name in names:
                raise InputError(f"duplicate generator name '{g.name}'", f"{pointer}/generators/{i}/name")
            names[g.name] = i
        cap = Fraction(self.cap)
        if cap <= 0:
            raise InputError("cap must be positive", f"{pointer}/cap")
        matrix: Matrix = {}
        for i, e in enumerate(self.differential):
            if e.src not in names:
                raise InputError(f"unknown generator '{e.src}'", f"{pointer}/differential/{i}/src")
            if e.dst not in names:
                raise InputError(f"unknown generator '{e.dst}'", f"{pointer}/differential/{i}/dst")
            if (e.src, e.dst) in matrix:
                raise InputError("duplicate differential entry", f"{pointer}/differential/{i}")
            matrix[(e.src, e.dst)] = NovikovScalar.from_json(e.scalar, f"{pointer}/differential/{i}/scalar").truncate(cap)
        generators = tuple(Generator(name=g.name, degree=g.degree, level=Fraction(g.level)) for g in self.generators)
        return FilteredComplex(generators=generators, differential=_clean(matrix), cap=cap)


class MapDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int = 0
    matrix: List[EntryDocument] = Field(default_factory=list)


class Decoration(BaseModel):
    """A decorated lift T^λ e^μ [p, w] of an intersection point."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: str
    point: str
    energy: Fraction = Fraction(0)
    mu: int = 0
    action: Fraction = Fraction(0)
    index: int = 0

    @field_validator("energy", "action", mode="before")
    @classmethod
    def parse_rational(cls, v: Any) -> Fraction:
        return as_fraction(v)

    def invariants(self) -> Tuple[str, Fraction, int]:
        """(p, λ + ∫w*ω, 2μ + μ-index): decorations with equal invariants are identified."""
        return self.point, self.energy + self.action, 2 * self.mu + self.index


class AnchoredPoint(BaseModel):
    """An intersection point with the reference action 𝒜([p,w]) and index μ([p,w];λ₀₁)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    action: Fraction = Fraction(0)
    index: int = 0

    @field_validator("action", mode="before")
    @classmethod
    def parse_action(cls, v: Any) -> Fraction:
        return as_fraction(v)


class AnchoredGeneratorSet(BaseModel):
    """Intersection points with reference data, extra decorations and the deck group."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: Tuple[AnchoredPoint, ...]
    decorations: Tuple[Decoration, ...] = ()
    pi_group: PiGroup = Field(default_factory=PiGroup)
    cap: Fraction = Fraction(10)

    @model_validator(mode="after")
    def check_points(self) -> "AnchoredGeneratorSet":
        names = [p.name for p in self.points]
        if len(set(names)) != len(names):
            raise ValueError("intersection point names must be unique")
        for d in self.decorations:
            if d.point not in names:
                raise ValueError(f"decoration '{d.label}' refers to unknown point '{d.point}'")
        return self

    def point(self, name: str) -> AnchoredPoint:
        for p in self.points:
            if p.name == name:
                return p
        raise KeyError(name)
