"""
Index queries as read from JSON documents.

    loop: {"path": P} or {"paths": [P, ...]} (concatenated)
    rs:   {"path": P, "reference": F}
    mm:   {"edges": [P, P, P, P]}
    dim:  {"formula": "disc", "n", "mu", "k", "output_degree"?, "input_degrees"?}
          {"formula": "sft", "n", "mu_cz"?, "morse"?, "c1"?, "dim_r_sim"?, "mode"?}

P is a path in either JSON path format and F a frame (see ``paths``).
"""

import logging
from fractions import Fraction
from typing import Any, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..config import ToleranceProfile, get_tolerance_profile
from ..exceptions import InputError
from ..novikov import format_fraction
from ..serialization import input_error_from_validation
from .dimensions import disc_moduli_dimension, sft_dimension
from .maslov import loop_maslov, maslov_morse
from .models import IndexFormulaInput, IndexResult
from .paths import concatenate, frame_from_json, path_from_json
from .robbin_salamon import rs_index

logger = logging.getLogger(__name__)


class DiscQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    formula: Literal["disc"]
    n: int = Field(..., ge=1)
    mu: int
    k: int = Field(..., ge=0)
    output_degree: Optional[int] = None
    input_degrees: Optional[List[int]] = None


class SftQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    formula: Literal["sft"]
    n: int = Field(..., ge=1)
    mu_cz: Optional[Union[int, str]] = None
    morse: Optional[int] = None
    c1: int = 0
    dim_r_sim: Optional[int] = None
    mode: Literal["CZ", "MorseBott"] = "MorseBott"


def _require(data: Any, key: str) -> Any:
    if not isinstance(data, dict):
        raise InputError("expected a JSON object", "")
    if key not in data:
        raise InputError(f"missing key '{key}'", f"/{key}")
    return data[key]


def _loop(data: Any, tol: ToleranceProfile) -> IndexResult:
    if isinstance(data, dict) and "paths" in data:
        specs = data["paths"]
        if not isinstance(specs, list) or not specs:
            raise InputError("'paths' must be a non-empty list", "/paths")
        paths = [path_from_json(p, f"/paths/{i}", tol.lagrangian) for i, p in enumerate(specs)]
        loop = concatenate(paths, tol.closure)
    else:
        loop = path_from_json(_require(data, "path"), "/path", tol.lagrangian)
    index = loop_maslov(loop, tolerances=tol)
    return IndexResult(mode="loop", value=str(index), details={"samples": len(loop), "n": loop.n})


def _rs(data: Any, tol: ToleranceProfile) -> IndexResult:
    path = path_from_json(_require(data, "path"), "/path", tol.lagrangian)
    reference = frame_from_json(_require(data, "reference"), "/reference", tol.lagrangian)
    doubled = rs_index(path, reference, tol)
    return IndexResult(mode="rs", value=format_fraction(Fraction(doubled, 2)), doubled=doubled,
                       details={"samples": len(path), "n": path.n})


def _mm(data: Any, tol: ToleranceProfile) -> IndexResult:
    specs = _require(data, "edges")
    if not isinstance(specs, list) or len(specs) != 4:
        raise InputError("'edges' must list the four boundary edges of the square", "/edges")
    edges = [path_from_json(p, f"/edges/{i}", tol.lagrangian) for i, p in enumerate(specs)]
    index = maslov_morse(edges, tolerances=tol)
    return IndexResult(mode="mm", value=str(index), details={"samples": [len(e) for e in edges]})


def _dim(data: Any) -> IndexResult:
    formula = _require(data, "formula")
    try:
        if formula == "disc":
            q = DiscQuery.model_validate(data)
            result = disc_moduli_dimension(q.n, q.mu, q.k, q.output_degree, q.input_degrees)
            return IndexResult(mode="dim", value=str(result.dimension), details=result.to_json())
        if formula == "sft":
            q = SftQuery.model_validate(data)
            inp = IndexFormulaInput(n=q.n, mu_cz=q.mu_cz, morse=q.morse, c1=q.c1, dim_r_sim=q.dim_r_sim)
        else:
            raise InputError(f"unknown formula '{formula}', expected 'disc' or 'sft'", "/formula")
    except ValidationError as e:
        raise input_error_from_validation(e) from e
    try:
        result = sft_dimension(inp, q.mode)
    except ValueError as e:
        raise InputError(str(e), "/mode") from e
    return IndexResult(mode="dim", value=format_fraction(result.dimension), details=result.to_json())


def run_index_query(mode: str, data: Any, tolerances: Optional[ToleranceProfile] = None) -> IndexResult:
    """Dispatch an index document by mode.

    Raises:
        InputError: On malformed documents.
        IndexLabError: Subclasses from the individual index computations.
    """
    tol = tolerances or get_tolerance_profile()
    logger.debug(f"Index query in mode '{mode}'")
    if mode == "loop":
        return _loop(data, tol)
    if mode == "rs":
        return _rs(data, tol)
    if mode == "mm":
        return _mm(data, tol)
    if mode == "dim":
        return _dim(data)
    raise InputError(f"unknown index mode '{mode}'", "")
