"""
Exact arithmetic in the universal Novikov ring.

An element is a finite (or energy-truncated) formal sum Σ aᵢ T^{λᵢ} e^{μᵢ}
with rational coefficients and energies. The e-exponent may be a half
integer; it is stored doubled (``mu2``) so that every key is exact. The
generator e has degree 2, so a term contributes ``mu2`` to the degree.
"""

import logging
import math
from fractions import Fraction
from functools import reduce
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .exceptions import InputError, NotInvertible, OddIndex
from .serialization import input_error_from_validation

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]
Term = Tuple[Fraction, Fraction, int]  # (coefficient, energy λ, doubled e-exponent)

INFINITY = math.inf


def as_fraction(value: Any) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_fraction(value: Fraction) -> str:
    """Encode a rational as "p/q" (or "p" when integral)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class NovikovScalar:
    """An immutable element of Λ_nov, truncated below an optional energy cap."""

    __slots__ = ("_terms", "_cap")

    def __init__(self, terms: Iterable[Sequence[Any]] = (), cap: Optional[Rational] = None):
        cap_f = as_fraction(cap) if cap is not None else None
        merged: Dict[Tuple[Fraction, int], Fraction] = {}
        for coeff, lam, mu2 in terms:
            c = as_fraction(coeff)
            if c == 0:
                continue
            key = (as_fraction(lam), int(mu2))
            if cap_f is not None and key[0] >= cap_f:
                continue
            merged[key] = merged.get(key, Fraction(0)) + c
        self._terms: Tuple[Term, ...] = tuple(
            (c, lam, mu2) for (lam, mu2), c in sorted(merged.items()) if c != 0
        )
        self._cap = cap_f

    # constructors

    @classmethod
    def zero(cls, cap: Optional[Rational] = None) -> "NovikovScalar":
        return cls((), cap)

    @classmethod
    def one(cls, cap: Optional[Rational] = None) -> "NovikovScalar":
        return cls([(1, 0, 0)], cap)

    @classmethod
    def monomial(cls, coeff: Rational = 1, energy: Rational = 0, mu: Rational = 0,
                 cap: Optional[Rational] = None) -> "NovikovScalar":
        """c·T^{energy}·e^{mu}; ``mu`` may be a half integer."""
        mu2 = as_fraction(mu) * 2
        if mu2.denominator != 1:
            raise ValueError(f"e-exponent {mu} is not a multiple of 1/2")
        return cls([(coeff, energy, int(mu2))], cap)

    @classmethod
    def constant(cls, coeff: Rational, cap: Optional[Rational] = None) -> "NovikovScalar":
        return cls([(coeff, 0, 0)], cap)

    # accessors

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    @property
    def cap(self) -> Optional[Fraction]:
        return self._cap

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> Union[Fraction, float]:
        """λ of the leading term; +∞ for zero."""
        return self._terms[0][1] if self._terms else INFINITY

    def is_homogeneous(self) -> bool:
        return len({mu2 for _, _, mu2 in self._terms}) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous nonzero scalar (T has degree 0, e has degree 2)."""
        if not self._terms or not self.is_homogeneous():
            return None
        return self._terms[0][2]

    def coefficient(self, energy: Rational, mu2: int = 0) -> Fraction:
        lam = as_fraction(energy)
        for c, l, m in self._terms:
            if l == lam and m == mu2:
                return c
        return Fraction(0)

    def truncate(self, cap: Optional[Rational]) -> "NovikovScalar":
        """Drop terms at or above ``cap`` and lower the carried cap accordingly."""
        if cap is None:
            return self
        new_cap = as_fraction(cap) if self._cap is None else min(self._cap, as_fraction(cap))
        return NovikovScalar(self._terms, new_cap)

    def shift(self, energy: Rational = 0, mu2: int = 0) -> "NovikovScalar":
        """Multiply by T^{energy} e^{mu2/2}; the cap moves with the energies."""
        de = as_fraction(energy)
        cap = self._cap + de if self._cap is not None else None
        return NovikovScalar(((c, l + de, m + mu2) for c, l, m in self._terms), cap)

    # arithmetic

    def __add__(self, other: Any) -> "NovikovScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return nov_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "NovikovScalar":
        return NovikovScalar(((-c, l, m) for c, l, m in self._terms), self._cap)

    def __sub__(self, other: Any) -> "NovikovScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return nov_add(self, -other)

    def __rsub__(self, other: Any) -> "NovikovScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return nov_add(other, -self)

    def __mul__(self, other: Any) -> "NovikovScalar":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            k = Fraction(other)
            return NovikovScalar(((c * k, l, m) for c, l, m in self._terms), self._cap)
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return nov_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = NovikovScalar.constant(other, self._cap)
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return self._terms == other._terms and self._cap == other._cap

    def same_terms(self, other: "NovikovScalar") -> bool:
        """Equality of the stored terms, ignoring the caps."""
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._terms, self._cap))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        cap = f", cap={format_fraction(self._cap)}" if self._cap is not None else ""
        return f"NovikovScalar({self}{cap})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for c, lam, mu2 in self._terms:
            mu = Fraction(mu2, 2)
            factor = f"T^{{{format_fraction(lam)}}}"
            if mu != 0:
                factor += f"e^{{{format_fraction(mu)}}}"
            parts.append(f"{format_fraction(c)}{factor}")
        return " + ".join(parts)

    # serialization

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "terms": [
                {"c": format_fraction(c), "lambda": format_fraction(lam), "mu": _format_mu(mu2)}
                for c, lam, mu2 in self._terms
            ]
        }
        if self._cap is not None:
            data["cap"] = format_fraction(self._cap)
        return data

    @classmethod
    def from_json(cls, data: Any, pointer: str = "") -> "NovikovScalar":
        """Parse either {"terms": [...], "cap": ...} or a bare term list."""
        if isinstance(data, list):
            data = {"terms": data}
        try:
            model = NovikovScalarModel.model_validate(data)
        except ValidationError as e:
            raise input_error_from_validation(e, pointer) from e
        return model.to_scalar(pointer)


def _format_mu(mu2: int) -> Union[int, str]:
    return mu2 // 2 if mu2 % 2 == 0 else f"{mu2}/2"


def _coerce(value: Any) -> Any:
    if isinstance(value, NovikovScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return NovikovScalar.constant(value)
    return NotImplemented


def _min_cap(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def nov_add(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    """Sum of two scalars, truncated at the smaller cap."""
    return NovikovScalar(a.terms + b.terms, _min_cap(a.cap, b.cap))


def _product_cap(a: NovikovScalar, b: NovikovScalar) -> Optional[Fraction]:
    # Unknown tails start at the caps; the product is known below
    # min(v(a) + cap_b, v(b) + cap_a), where an empty factor counts with valuation ≥ its cap.
    def floor_valuation(x: NovikovScalar) -> Optional[Fraction]:
        v = x.valuation()
        if v == INFINITY:
            return x.cap
        return v if x.cap is None else min(v, x.cap)

    bounds = []
    va, vb = floor_valuation(a), floor_valuation(b)
    if b.cap is not None and va is not None:
        bounds.append(va + b.cap)
    if a.cap is not None and vb is not None:
        bounds.append(vb + a.cap)
    return min(bounds) if bounds else None


def nov_mul(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    """Convolution product T^{λ}e^{μ}·T^{λ'}e^{μ'} = T^{λ+λ'}e^{μ+μ'}."""
    cap = _product_cap(a, b)
    products = (
        (ca * cb, la + lb, ma + mb)
        for ca, la, ma in a.terms
        for cb, lb, mb in b.terms
        if cap is None or la + lb < cap
    )
    return NovikovScalar(products, cap)


def valuation(a: NovikovScalar) -> Union[Fraction, float]:
    """The leading energy 𝔳(a); +∞ for the zero element."""
    return a.valuation()


def nov_invert(a: NovikovScalar, cap: Rational) -> NovikovScalar:
    """Inverse of ``a`` correct below ``cap``.

    The leading term c·T^{λ₀}e^{μ₀} is inverted exactly and the rest is
    handled by the geometric series Σ(−x)^k with 𝔳(x) > 0.

    Raises:
        ZeroDivisionError: If ``a`` is zero.
        NotInvertible: If another term shares the leading energy.
    """
    if a.is_zero:
        raise ZeroDivisionError("cannot invert the zero Novikov scalar")
    cap_f = as_fraction(cap)
    c0, lam0, mu0 = a.terms[0]
    x_terms = [(c / c0, lam - lam0, mu - mu0) for c, lam, mu in a.terms[1:]]
    if any(lam <= 0 for _, lam, _ in x_terms):
        raise NotInvertible(f"leading energy {format_fraction(lam0)} of {a} is shared by several terms")
    # s must be exact below cap + λ₀ so that T^{-λ₀}·s is exact below cap
    series_cap = cap_f + max(lam0, Fraction(0))
    x = NovikovScalar(x_terms, series_cap)
    minus_x = -x
    s = NovikovScalar.one(series_cap)
    power = NovikovScalar.one(series_cap)
    while True:
        power = nov_mul(power, minus_x).truncate(series_cap)
        if power.is_zero:
            break
        s = nov_add(s, power)
    result_cap = cap_f + max(Fraction(0), -lam0)
    if a.cap is not None:
        result_cap = min(result_cap, a.cap - 2 * lam0)
    inverse = NovikovScalar(((c / c0, lam - lam0, mu - mu0) for c, lam, mu in s.terms), result_cap)
    logger.debug(f"Inverted {a} below {format_fraction(cap_f)} with {len(inverse.terms)} terms")
    return inverse


class PiGroupElement(BaseModel):
    """An element (E, μ) of the deck transformation group, inside ℚ × ℤ."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    energy: Fraction = Fraction(0)
    maslov: int = 0

    @field_validator("energy", mode="before")
    @classmethod
    def parse_energy(cls, v: Any) -> Fraction:
        return as_fraction(v)

    def __add__(self, other: "PiGroupElement") -> "PiGroupElement":
        return PiGroupElement(energy=self.energy + other.energy, maslov=self.maslov + other.maslov)

    def __neg__(self) -> "PiGroupElement":
        return PiGroupElement(energy=-self.energy, maslov=-self.maslov)

    def __sub__(self, other: "PiGroupElement") -> "PiGroupElement":
        return self + (-other)

    @classmethod
    def identity(cls) -> "PiGroupElement":
        return cls()


class PiGroup(BaseModel):
    """The subgroup of ℚ × ℤ generated by finitely many elements."""

    model_config = ConfigDict(frozen=True)

    generators: List[PiGroupElement] = Field(default_factory=list)

    def energy(self, g: PiGroupElement) -> Fraction:
        """The energy homomorphism E."""
        return g.energy

    def maslov(self, g: PiGroupElement) -> int:
        """The index homomorphism μ."""
        return g.maslov

    def _lattice(self, extra: Optional[PiGroupElement] = None) -> Tuple[Matrix, int]:
        elements = list(self.generators) + ([extra] if extra is not None else [])
        scale = reduce(math.lcm, (g.energy.denominator for g in elements), 1)
        columns = [[int(g.energy * scale), g.maslov] for g in elements if g.energy != 0 or g.maslov != 0]
        return Matrix(columns).T if columns else Matrix.zeros(2, 0), scale

    def contains(self, g: PiGroupElement) -> bool:
        """Decide membership by comparing Hermite normal forms with and without ``g``."""
        if g.energy == 0 and g.maslov == 0:
            return True
        base, _ = self._lattice(g)
        without = base[:, :-1]
        if without.cols == 0:
            return False
        return _hnf(without) == _hnf(base)


def _hnf(m: Matrix) -> Matrix:
    h = hermite_normal_form(m)
    # drop zero columns so that equal lattices compare equal
    keep = [j for j in range(h.cols) if any(h[i, j] != 0 for i in range(h.rows))]
    return h.extract(list(range(h.rows)), keep)


def pi_embed(g: PiGroupElement, allow_half: bool = True) -> NovikovScalar:
    """g ↦ T^{E(g)} e^{μ(g)/2}.

    Raises:
        OddIndex: If μ(g) is odd and ``allow_half`` is False.
    """
    if g.maslov % 2 != 0 and not allow_half:
        raise OddIndex(f"Maslov index {g.maslov} is odd and half e-exponents are disabled")
    # the doubled e-exponent of e^{μ/2} is μ itself
    return NovikovScalar([(1, g.energy, g.maslov)])


# JSON schema


def rational_string(v: Any) -> str:
    """Validate a JSON rational (integer or "p/q" string) and return its string form."""
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValueError("rationals must be given as integers or 'p/q' strings")
    try:
        Fraction(str(v))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"'{v}' is not a rational") from e
    return str(v)


class NovikovTermModel(BaseModel):
    """One term {"c": "p/q", "lambda": "p/q", "mu": int | "k/2"}."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    c: str
    lam: str = Field(alias="lambda")
    mu: Union[int, str] = 0

    @field_validator("c", "lam", mode="before")
    @classmethod
    def check_rational(cls, v: Any) -> str:
        return rational_string(v)

    def key(self) -> Tuple[Fraction, int]:
        mu2 = Fraction(str(self.mu)) * 2
        if mu2.denominator != 1:
            raise ValueError(f"e-exponent {self.mu} is not a multiple of 1/2")
        return Fraction(self.lam), int(mu2)


class NovikovScalarModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    terms: List[NovikovTermModel] = Field(default_factory=list)
    cap: Optional[str] = None

    @field_validator("cap", mode="before")
    @classmethod
    def check_cap(cls, v: Any) -> Optional[str]:
        if v is None:
            return None
        return rational_string(v)

    def to_scalar(self, pointer: str = "") -> NovikovScalar:
        previous: Optional[Tuple[Fraction, int]] = None
        parsed = []
        for i, term in enumerate(self.terms):
            try:
                key = term.key()
            except ValueError as e:
                raise InputError(str(e), f"{pointer}/terms/{i}/mu") from e
            if previous is not None and key <= previous:
                raise InputError("terms must be strictly increasing in (lambda, mu)", f"{pointer}/terms/{i}")
            if Fraction(term.c) == 0:
                raise InputError("zero coefficients are not stored", f"{pointer}/terms/{i}/c")
            previous = key
            parsed.append((Fraction(term.c), key[0], key[1]))
        cap = as_fraction(self.cap) if self.cap is not None else None
        if cap is not None and any(lam >= cap for _, lam, _ in parsed):
            raise InputError("term energy at or above cap", f"{pointer}/cap")
        return NovikovScalar(parsed, cap)
