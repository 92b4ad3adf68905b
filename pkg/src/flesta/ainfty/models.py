"""
Data models for filtered A∞ algebras and bimodules given as sparse tensors.

An operation entry ``operations[(x_1, ..., x_k)][y] = s`` means that
m_k(x_1, ..., x_k) has the term s·y. With shifted degrees |x|' = |x| - 1 every
term must satisfy |y|' + deg(s) = Σ|x_i|' + 1 (e has degree 2) and must not
lower the filtration: level(y) + energy ≥ Σ level(x_i).
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..complexes.models import Generator, GeneratorDocument
from ..exceptions import InputError
from ..novikov import INFINITY, NovikovScalar, as_fraction, format_fraction, rational_string
from ..serialization import input_error_from_validation

logger = logging.getLogger(__name__)

Element = Dict[str, NovikovScalar]
OpTable = Dict[Tuple[str, ...], Element]
BimoduleKey = Tuple[Tuple[str, ...], str, Tuple[str, ...]]
BimoduleTable = Dict[BimoduleKey, Element]


def shifted(g: Generator) -> int:
    return g.degree - 1


def term_problem(inputs: Iterable[Generator], output: Generator, scalar: NovikovScalar) -> Optional[str]:
    """Why ``scalar·output`` cannot be a term of m_k(inputs), or None."""
    inputs = list(inputs)
    expected = sum(shifted(g) for g in inputs) + 1
    filtration = sum((g.level for g in inputs), Fraction(0))
    for _, lam, mu2 in scalar.terms:
        if shifted(output) + mu2 != expected:
            return f"shifted degree {shifted(output) + mu2} of the output, expected {expected}"
        if output.level + lam < filtration:
            return (f"output filtration {format_fraction(output.level + lam)} "
                    f"below the input filtration {format_fraction(filtration)}")
    return None


def element_valuation(element: Element, generators: Dict[str, Generator]) -> Any:
    """Filtration valuation min(level(g) + 𝔳(coefficient)); +∞ for zero."""
    values = [generators[g].level + s.valuation() for g, s in element.items() if not s.is_zero]
    return min(values) if values else INFINITY


def clean(element: Element, cap: Optional[Fraction] = None) -> Element:
    out = {}
    for g, s in element.items():
        s = s.truncate(cap) if cap is not None else s
        if not s.is_zero:
            out[g] = s
    return out


def element_to_json(element: Element) -> List[Dict[str, Any]]:
    return [{"generator": g, "scalar": s.to_json()} for g, s in sorted(element.items()) if not s.is_zero]


class AInftyData(BaseModel):
    """Operations m_0 … m_{k_max} on a free module with levelled generators."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    generators: Tuple[Generator, ...]
    operations: OpTable = Field(default_factory=dict)
    cap: Fraction = Fraction(4)
    k_max: int = Field(4, ge=0)
    label: Optional[str] = None

    @field_validator("cap", mode="before")
    @classmethod
    def parse_cap(cls, v: Any) -> Fraction:
        return as_fraction(v)

    @model_validator(mode="after")
    def check_operations(self) -> "AInftyData":
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        if self.cap <= 0:
            raise ValueError("cap must be positive")
        gens = self.by_name
        for inputs, outputs in self.operations.items():
            if len(inputs) > self.k_max:
                raise ValueError(f"operation of arity {len(inputs)} exceeds k_max = {self.k_max}")
            for name in list(inputs) + list(outputs):
                if name not in gens:
                    raise ValueError(f"operation references unknown generator '{name}'")
            for out, scalar in outputs.items():
                problem = term_problem((gens[x] for x in inputs), gens[out], scalar)
                if problem:
                    raise ValueError(f"m_{len(inputs)}{inputs} → {out}: {problem}")
        return self

    @property
    def by_name(self) -> Dict[str, Generator]:
        return {g.name: g for g in self.generators}

    @property
    def names(self) -> List[str]:
        return sorted(g.name for g in self.generators)

    @property
    def max_level(self) -> Fraction:
        return max((g.level for g in self.generators), default=Fraction(0))

    def op(self, inputs: Tuple[str, ...]) -> Element:
        return self.operations.get(tuple(inputs), {})

    def arity(self, k: int) -> OpTable:
        return {inputs: out for inputs, out in self.operations.items() if len(inputs) == k}

    def with_operations(self, operations: OpTable) -> "AInftyData":
        cleaned = {k: clean(v, self.cap) for k, v in operations.items()}
        return AInftyData(generators=self.generators, operations={k: v for k, v in cleaned.items() if v},
                          cap=self.cap, k_max=self.k_max, label=self.label)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "generators": [
                {"name": g.name, "degree": g.degree, "level": format_fraction(g.level)} for g in self.generators
            ],
            "operations": [
                {"k": len(inputs), "inputs": list(inputs), "output": out, "scalar": s.to_json()}
                for inputs, outputs in sorted(self.operations.items())
                for out, s in sorted(outputs.items()) if not s.is_zero
            ],
            "cap": format_fraction(self.cap),
            "k_max": self.k_max,
        }
        if self.label is not None:
            data["label"] = self.label
        return data

    @classmethod
    def from_json(cls, data: Any, pointer: str = "") -> "AInftyData":
        try:
            doc = AInftyDocument.model_validate(data)
        except ValidationError as e:
            raise input_error_from_validation(e, pointer) from e
        return doc.to_data(pointer)


class OperationDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int = Field(..., ge=0)
    inputs: List[str] = Field(default_factory=list)
    output: str
    scalar: Any


class AInftyDocument(BaseModel):
    """{"generators": [...], "operations": [{"k", "inputs", "output", "scalar"}], "cap", "k_max", "label"}"""

    model_config = ConfigDict(extra="forbid")

    generators: List[GeneratorDocument]
    operations: List[OperationDocument] = Field(default_factory=list)
    cap: str = "4"
    k_max: int = Field(4, ge=0)
    label: Optional[str] = None

    @field_validator("cap", mode="before")
    @classmethod
    def check_cap(cls, v: Any) -> str:
        return rational_string(v)

    def to_data(self, pointer: str = "") -> AInftyData:
        gens: Dict[str, Generator] = {}
        for i, g in enumerate(self.generators):
            if g.name in gens:
                raise InputError(f"duplicate generator name '{g.name}'", f"{pointer}/generators/{i}/name")
            gens[g.name] = Generator(name=g.name, degree=g.degree, level=Fraction(g.level))
        cap = Fraction(self.cap)
        if cap <= 0:
            raise InputError("cap must be positive", f"{pointer}/cap")
        operations: OpTable = {}
        for i, entry in enumerate(self.operations):
            where = f"{pointer}/operations/{i}"
            if entry.k != len(entry.inputs):
                raise InputError(f"k = {entry.k} but {len(entry.inputs)} inputs are given", f"{where}/k")
            if entry.k > self.k_max:
                raise InputError(f"arity {entry.k} exceeds k_max = {self.k_max}", f"{where}/k")
            for j, name in enumerate(entry.inputs):
                if name not in gens:
                    raise InputError(f"unknown generator '{name}'", f"{where}/inputs/{j}")
            if entry.output not in gens:
                raise InputError(f"unknown generator '{entry.output}'", f"{where}/output")
            scalar = NovikovScalar.from_json(entry.scalar, f"{where}/scalar").truncate(cap)
            problem = term_problem((gens[x] for x in entry.inputs), gens[entry.output], scalar)
            if problem:
                raise InputError(problem, f"{where}/scalar")
            outputs = operations.setdefault(tuple(entry.inputs), {})
            if entry.output in outputs:
                raise InputError("duplicate operation entry", where)
            outputs[entry.output] = scalar
        return AInftyData(generators=tuple(gens.values()), operations=operations, cap=cap,
                          k_max=self.k_max, label=self.label)


class BoundingCochain(BaseModel):
    """A degree-one element b = Σ b_g·g of positive filtration valuation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    terms: Element = Field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return all(s.is_zero for s in self.terms.values())

    def valuation(self, a: AInftyData) -> Any:
        return element_valuation(self.terms, a.by_name)

    def degree_problem(self, a: AInftyData) -> Optional[str]:
        gens = a.by_name
        for g, s in self.terms.items():
            if g not in gens:
                return f"unknown generator '{g}'"
            for _, _, mu2 in s.terms:
                if gens[g].degree + mu2 != 1:
                    return f"coefficient of {g} gives degree {gens[g].degree + mu2}, expected 1"
        return None

    def __add__(self, other: "BoundingCochain") -> "BoundingCochain":
        merged = dict(self.terms)
        for g, s in other.terms.items():
            merged[g] = merged[g] + s if g in merged else s
        return BoundingCochain(terms=clean(merged))

    def to_json(self) -> Dict[str, Any]:
        return {"b": element_to_json(self.terms)}

    @classmethod
    def from_json(cls, data: Any, pointer: str = "") -> "BoundingCochain":
        if not isinstance(data, dict) or not isinstance(data.get("b"), list):
            raise InputError("expected {\"b\": [{\"generator\", \"scalar\"}]}", pointer)
        terms: Element = {}
        for i, entry in enumerate(data["b"]):
            if not isinstance(entry, dict) or "generator" not in entry or "scalar" not in entry:
                raise InputError("entries need 'generator' and 'scalar'", f"{pointer}/b/{i}")
            if entry["generator"] in terms:
                raise InputError("duplicate generator", f"{pointer}/b/{i}/generator")
            terms[entry["generator"]] = NovikovScalar.from_json(entry["scalar"], f"{pointer}/b/{i}/scalar")
        return cls(terms=clean(terms))


class Obstructed(BaseModel):
    """The first filtration level at which the residual is not in the image of m_1."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    level: Fraction
    residual_class: Element = Field(default_factory=dict)
    partial: BoundingCochain = Field(default_factory=BoundingCochain)

    def to_json(self) -> Dict[str, Any]:
        return {
            "obstructed": True,
            "level": format_fraction(self.level),
            "residual_class": element_to_json(self.residual_class),
        }


class RelationResidual(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    inputs: Tuple[str, ...]
    output: str
    scalar: NovikovScalar

    def describe(self) -> str:
        return f"({', '.join(self.inputs)}) → {self.scalar}·{self.output}"


class RelationReport(BaseModel):
    """Outcome of an A∞ or bimodule relation check."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    passed: bool
    residuals: List[RelationResidual] = Field(default_factory=list)
    checked: int = 0
    k_max: int = 0
    cap: Fraction = Fraction(4)
    paths_agree: bool = True

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "paths_agree": self.paths_agree,
            "k_max": self.k_max,
            "cap": format_fraction(self.cap),
            "residuals": [
                {"inputs": list(r.inputs), "output": r.output, "scalar": r.scalar.to_json()} for r in self.residuals
            ],
        }


class BimoduleData(BaseModel):
    """Operations n_{k₁,k₀}(y_1, …, y_{k₁}, x, z_1, …, z_{k₀}) with y from ``left`` and z from ``right``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    left: AInftyData
    right: AInftyData
    module: Tuple[Generator, ...]
    operations: BimoduleTable = Field(default_factory=dict)
    cap: Fraction = Fraction(4)
    k_max: int = Field(4, ge=0)

    @model_validator(mode="after")
    def check_operations(self) -> "BimoduleData":
        gens = self.by_name
        left, right = self.left.by_name, self.right.by_name
        for (ys, x, zs), outputs in self.operations.items():
            if x not in gens or any(y not in left for y in ys) or any(z not in right for z in zs):
                raise ValueError(f"bimodule operation {(ys, x, zs)} references an unknown generator")
            for out, scalar in outputs.items():
                if out not in gens:
                    raise ValueError(f"bimodule operation outputs unknown generator '{out}'")
                problem = term_problem([left[y] for y in ys] + [gens[x]] + [right[z] for z in zs], gens[out], scalar)
                if problem:
                    raise ValueError(f"n{(ys, x, zs)} → {out}: {problem}")
        return self

    @property
    def by_name(self) -> Dict[str, Generator]:
        return {g.name: g for g in self.module}

    def op(self, ys: Tuple[str, ...], x: str, zs: Tuple[str, ...]) -> Element:
        return self.operations.get((tuple(ys), x, tuple(zs)), {})

    @classmethod
    def from_json(cls, data: Any, pointer: str = "") -> "BimoduleData":
        try:
            doc = BimoduleDocument.model_validate(data)
        except ValidationError as e:
            raise input_error_from_validation(e, pointer) from e
        left = AInftyData.from_json(doc.left, f"{pointer}/left")
        right = AInftyData.from_json(doc.right, f"{pointer}/right")
        module = tuple(Generator(name=g.name, degree=g.degree, level=Fraction(g.level)) for g in doc.module)
        cap = Fraction(doc.cap)
        operations: BimoduleTable = {}
        for i, entry in enumerate(doc.operations):
            key = (tuple(entry.left), entry.input, tuple(entry.right))
            scalar = NovikovScalar.from_json(entry.scalar, f"{pointer}/operations/{i}/scalar").truncate(cap)
            operations.setdefault(key, {})[entry.output] = scalar
        try:
            return cls(left=left, right=right, module=module, operations=operations, cap=cap, k_max=doc.k_max)
        except ValidationError as e:
            raise input_error_from_validation(e, pointer) from e


class BimoduleOperationDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    left: List[str] = Field(default_factory=list)
    input: str
    right: List[str] = Field(default_factory=list)
    output: str
    scalar: Any


class BimoduleDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    left: Any
    right: Any
    module: List[GeneratorDocument]
    operations: List[BimoduleOperationDocument] = Field(default_factory=list)
    cap: str = "4"
    k_max: int = Field(4, ge=0)

    @field_validator("cap", mode="before")
    @classmethod
    def check_cap(cls, v: Any) -> str:
        return rational_string(v)


class BimoduleReport(BaseModel):
    """Bimodule relations of the bare operations and δ_{b₁,b₀}² below the cap."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    relations: RelationReport
    square_residuals: List[RelationResidual] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.relations.passed and not self.square_residuals

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "relations": self.relations.to_json(),
            "square_residuals": [
                {"inputs": list(r.inputs), "output": r.output, "scalar": r.scalar.to_json()}
                for r in self.square_residuals
            ],
        }
