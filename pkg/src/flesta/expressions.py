"""
Evaluation of Novikov expression files.

A file names some scalars and then a list of steps, each of which stores the
result of one ring operation under a new name::

    {"cap": "10",
     "scalars": {"a": {"terms": [...]}, "b": [...]},
     "steps": [{"name": "c", "op": "mul", "args": ["a", "b"]},
               {"name": "d", "op": "invert", "args": ["c"]}]}
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .exceptions import InputError, NotInvertible
from .novikov import INFINITY, NovikovScalar, format_fraction, nov_invert, rational_string
from .serialization import input_error_from_validation

logger = logging.getLogger(__name__)

DEFAULT_CAP = Fraction(10)

ARITY = {"add": None, "sub": 2, "mul": None, "neg": 1, "invert": 1, "truncate": 1}


class ExpressionStep(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    op: Literal["add", "sub", "mul", "neg", "invert", "truncate"]
    args: List[str] = Field(..., min_length=1)
    cap: Optional[str] = None

    @field_validator("cap", mode="before")
    @classmethod
    def check_cap(cls, v: Any) -> Optional[str]:
        return None if v is None else rational_string(v)


class ExpressionDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cap: Optional[str] = None
    scalars: Dict[str, Any] = Field(default_factory=dict)
    steps: List[ExpressionStep] = Field(default_factory=list)

    @field_validator("cap", mode="before")
    @classmethod
    def check_cap(cls, v: Any) -> Optional[str]:
        return None if v is None else rational_string(v)


def describe(scalar: NovikovScalar) -> Dict[str, Any]:
    v = scalar.valuation()
    return {
        "scalar": scalar.to_json(),
        "valuation": "inf" if v == INFINITY else format_fraction(v),
        "degree": scalar.degree,
        "text": str(scalar),
    }


def _apply(step: ExpressionStep, args: List[NovikovScalar], cap: Fraction, where: str) -> NovikovScalar:
    if step.op == "add":
        result = args[0]
        for x in args[1:]:
            result = result + x
        return result
    if step.op == "sub":
        return args[0] - args[1]
    if step.op == "mul":
        result = args[0]
        for x in args[1:]:
            result = result * x
        return result
    if step.op == "neg":
        return -args[0]
    if step.op == "truncate":
        if step.cap is None:
            raise InputError("truncate needs a cap", f"{where}/cap")
        return args[0].truncate(Fraction(step.cap))
    invert_cap = Fraction(step.cap) if step.cap is not None else cap
    try:
        return nov_invert(args[0], invert_cap)
    except ZeroDivisionError:
        raise InputError("cannot invert zero", f"{where}/args/0")
    except NotInvertible as e:
        raise InputError(str(e), f"{where}/args/0")


def evaluate_expressions(data: Any, cap: Optional[Fraction] = None) -> Dict[str, Any]:
    """Evaluate an expression file.

    ``cap`` overrides the file's cap; inputs are truncated to it and it is the
    default precision of inversions.

    Raises:
        InputError: On schema violations, unknown or duplicate names, wrong
            arities or non-invertible arguments.
    """
    try:
        doc = ExpressionDocument.model_validate(data)
    except ValidationError as e:
        raise input_error_from_validation(e) from e
    if cap is None:
        cap = Fraction(doc.cap) if doc.cap is not None else DEFAULT_CAP
    if cap <= 0:
        raise InputError("cap must be positive", "/cap")

    values: Dict[str, NovikovScalar] = {}
    for name in sorted(doc.scalars):
        values[name] = NovikovScalar.from_json(doc.scalars[name], f"/scalars/{name}").truncate(cap)

    for i, step in enumerate(doc.steps):
        where = f"/steps/{i}"
        if step.name in values:
            raise InputError(f"name '{step.name}' is already defined", f"{where}/name")
        arity = ARITY[step.op]
        if arity is not None and len(step.args) != arity:
            raise InputError(f"{step.op} takes {arity} argument(s), got {len(step.args)}", f"{where}/args")
        args = []
        for j, arg in enumerate(step.args):
            if arg not in values:
                raise InputError(f"unknown name '{arg}'", f"{where}/args/{j}")
            args.append(values[arg])
        values[step.name] = _apply(step, args, cap, where)
        logger.debug(f"{step.name} = {step.op}({', '.join(step.args)}) = {values[step.name]}")

    return {
        "cap": format_fraction(cap),
        "values": {name: describe(s) for name, s in sorted(values.items())},
    }
