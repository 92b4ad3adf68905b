"""Data models for spectral sequence pages."""

import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..novikov import as_fraction, format_fraction

Cell = Tuple[int, int]
RationalVector = List[Fraction]


class FiltrationScheme(BaseModel):
    """The integer filtration F^n = F^{nλ₀} used to build the pages.

    ``gap`` is λ'' of the complex (``None`` when δ = δ₀).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda0: Fraction
    gap: Optional[Fraction] = None

    @field_validator("lambda0", mode="before")
    @classmethod
    def parse_step(cls, v: Any) -> Fraction:
        return as_fraction(v)

    @field_validator("lambda0")
    @classmethod
    def step_must_be_positive(cls, v: Fraction) -> Fraction:
        if v <= 0:
            raise ValueError("λ₀ must be positive")
        return v

    @model_validator(mode="after")
    def step_below_gap(self) -> "FiltrationScheme":
        if self.gap is not None and self.lambda0 >= self.gap:
            raise ValueError(
                f"λ₀ = {format_fraction(self.lambda0)} must lie strictly below the gap λ'' = {format_fraction(self.gap)}"
            )
        return self

    def layer(self, position: Fraction) -> int:
        """Index n with position in [nλ₀, (n+1)λ₀)."""
        return math.floor(position / self.lambda0)


class PageCell(BaseModel):
    """E_r^{p,q}: vectors of the truncated model whose classes form a basis."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    p: int
    q: int
    representatives: List[RationalVector] = Field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.representatives)


class SpectralPage(BaseModel):
    """One page E_r with its differential δ_r: (p,q) → (p+1, q+r-1)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    r: int = Field(..., ge=1)
    cells: Dict[Cell, PageCell] = Field(default_factory=dict)
    differentials: Dict[Cell, List[RationalVector]] = Field(default_factory=dict)
    model: Any = Field(None, exclude=True, repr=False)

    def rank(self, p: int, q: int) -> int:
        cell = self.cells.get((p, q))
        return cell.rank if cell is not None else 0

    def ranks(self) -> Dict[Cell, int]:
        return {key: cell.rank for key, cell in sorted(self.cells.items())}

    def target(self, p: int, q: int) -> Cell:
        return p + 1, q + self.r - 1

    def to_json(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "cells": [{"p": p, "q": q, "rank": rank} for (p, q), rank in self.ranks().items() if rank],
        }


class StabilizationResult(BaseModel):
    """Where the pages stop changing, with the cross-checks that certify it."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    r0: int
    limit_ranks: Dict[Cell, int]
    graded_homology_ranks: Dict[Cell, int]
    novikov_ranks: Dict[int, int]
    lambda0: Fraction

    def to_json(self) -> Dict[str, Any]:
        return {
            "stabilized_at": self.r0,
            "lambda0": format_fraction(self.lambda0),
            "limit": [{"p": p, "q": q, "rank": r} for (p, q), r in sorted(self.limit_ranks.items()) if r],
            "novikov_ranks": {str(p): r for p, r in sorted(self.novikov_ranks.items())},
        }


GapValue = Union[Fraction, float]
