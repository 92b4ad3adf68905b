"""
Twist profiles R: ℝ → ℝ for model Dehn twists.

A profile is given on t ≥ 0 by R′ (with R(t) = -∫_t^1 R′) and extended to
t < 0 by R(-s) = R(s) - s·c(s), where the cutoff c equals 1 on [0, 1/2] and
vanishes from 1 on. This makes R(-t) = R(t) - t hold for |t| ≤ 1/2 and keeps
supp R ⊂ [-1, 1].
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Type

import numpy as np

logger = logging.getLogger(__name__)


def _cutoff(s: np.ndarray) -> np.ndarray:
    x = np.clip(2.0 * (s - 0.5), 0.0, 1.0)
    return 1.0 - x ** 3 * (10.0 - 15.0 * x + 6.0 * x ** 2)


def _cutoff_d1(s: np.ndarray) -> np.ndarray:
    x = np.clip(2.0 * (s - 0.5), 0.0, 1.0)
    return -2.0 * 30.0 * x ** 2 * (1.0 - x) ** 2


def _cutoff_d2(s: np.ndarray) -> np.ndarray:
    x = np.clip(2.0 * (s - 0.5), 0.0, 1.0)
    return -4.0 * 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x)


class ProfileBase(ABC):
    """Abstract base class for twist profiles.

    Subclasses describe R on t ≥ 0; the negative half line is derived here.
    Profiles are stateless, parameters are passed as keyword arguments.
    """

    @classmethod
    def parameter_names(cls) -> List[str]:
        return []

    @classmethod
    def validate_params(cls, **params: Any) -> None:
        """Raise ValueError for parameters outside the admissible range."""
        unknown = set(params) - set(cls.parameter_names())
        if unknown:
            raise ValueError(f"unknown profile parameters: {', '.join(sorted(unknown))}")

    @classmethod
    @abstractmethod
    def positive(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        """R(t) for t ≥ 0."""

    @classmethod
    @abstractmethod
    def positive_d1(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        """R′(t) for t ≥ 0."""

    @classmethod
    @abstractmethod
    def positive_d2(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        """R″(t) for t ≥ 0."""

    @classmethod
    def value(cls, t: Any, **params: Any) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        s = np.abs(t)
        mirrored = cls.positive(s, **params) - s * _cutoff(s)
        return np.where(t >= 0, cls.positive(s, **params), mirrored)

    @classmethod
    def d1(cls, t: Any, **params: Any) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        s = np.abs(t)
        mirrored = -cls.positive_d1(s, **params) + _cutoff(s) + s * _cutoff_d1(s)
        return np.where(t >= 0, cls.positive_d1(s, **params), mirrored)

    @classmethod
    def d2(cls, t: Any, **params: Any) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        s = np.abs(t)
        mirrored = cls.positive_d2(s, **params) - 2.0 * _cutoff_d1(s) - s * _cutoff_d2(s)
        return np.where(t >= 0, cls.positive_d2(s, **params), mirrored)


class CubicProfile(ProfileBase):
    """R′(t) = ½(1 - t)³ on [0, 1]; R″ < 0 wherever R′ > 0."""

    @classmethod
    def positive(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        return np.where(t < 1.0, -0.125 * (1.0 - np.minimum(t, 1.0)) ** 4, 0.0)

    @classmethod
    def positive_d1(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        return np.where(t < 1.0, 0.5 * (1.0 - np.minimum(t, 1.0)) ** 3, 0.0)

    @classmethod
    def positive_d2(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        return np.where(t < 1.0, -1.5 * (1.0 - np.minimum(t, 1.0)) ** 2, 0.0)


class PlateauProfile(ProfileBase):
    """
    Piecewise linear R′ through (0, ½), (¼, level), (½, level), (1, 0).

    R″ vanishes on [¼, ½] where R′ = level, so this profile is δ-wobbly only
    for δ > level. Kinks make it C¹; use it for wobble tests, not for
    finite-difference geometry.
    """

    KNOTS = (0.0, 0.25, 0.5, 1.0)

    @classmethod
    def parameter_names(cls) -> List[str]:
        return ["level"]

    @classmethod
    def validate_params(cls, **params: Any) -> None:
        super().validate_params(**params)
        level = params.get("level", 0.02)
        if not 0.0 < level < 0.5:
            raise ValueError(f"plateau level must lie in (0, 1/2), got {level}")

    @classmethod
    def _heights(cls, **params: Any) -> np.ndarray:
        level = params.get("level", 0.02)
        return np.array([0.5, level, level, 0.0])

    @classmethod
    def _primitive(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        """∫_0^t R′ for t in [0, 1]."""
        xs = np.array(cls.KNOTS)
        ys = cls._heights(**params)
        areas = np.concatenate([[0.0], np.cumsum(np.diff(xs) * (ys[1:] + ys[:-1]) / 2.0)])
        t = np.clip(t, 0.0, 1.0)
        k = np.clip(np.searchsorted(xs, t, side="right") - 1, 0, len(xs) - 2)
        return areas[k] + (t - xs[k]) * (ys[k] + np.interp(t, xs, ys)) / 2.0

    @classmethod
    def positive(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        total = cls._primitive(np.array(1.0), **params)
        return np.where(t < 1.0, cls._primitive(t, **params) - total, 0.0)

    @classmethod
    def positive_d1(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        return np.where(t < 1.0, np.interp(t, cls.KNOTS, cls._heights(**params)), 0.0)

    @classmethod
    def positive_d2(cls, t: np.ndarray, **params: Any) -> np.ndarray:
        xs = np.array(cls.KNOTS)
        ys = cls._heights(**params)
        slopes = np.diff(ys) / np.diff(xs)
        k = np.clip(np.searchsorted(xs, t, side="right") - 1, 0, len(xs) - 2)
        return np.where(t < 1.0, slopes[k], 0.0)


class ProfileRegistry:
    """Manages registration and retrieval of twist profile classes."""

    def __init__(self) -> None:
        self._profiles: Dict[str, Type[ProfileBase]] = {}

    def register(self, name: str, profile_class: Type[ProfileBase]) -> None:
        if not issubclass(profile_class, ProfileBase):
            raise TypeError("Registered class must be a subclass of ProfileBase.")
        if name in self._profiles:
            raise ValueError(f"Profile '{name}' is already registered.")
        self._profiles[name] = profile_class

    def get(self, name: str) -> Optional[Type[ProfileBase]]:
        return self._profiles.get(name)

    def list_available(self) -> List[str]:
        return list(self._profiles.keys())


_profile_registry = ProfileRegistry()


def get_profile_registry() -> ProfileRegistry:
    """Returns the global profile registry instance."""
    return _profile_registry


get_profile_registry().register("default", CubicProfile)
get_profile_registry().register("plateau", PlateauProfile)
