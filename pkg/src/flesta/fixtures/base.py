"""
Base class and registry for seeded fixture generators.
"""
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict, List, Optional, Type


class FixtureBase(ABC):
    """Abstract base class for fixture kinds.

    Fixtures are stateless: ``build`` is a pure function of the seed, so the
    same seed always produces the same JSON document.
    """

    description: ClassVar[str] = ""

    @classmethod
    @abstractmethod
    def build(cls, seed: int) -> Any:
        """Return the domain object (it must provide ``to_json``)."""

    @classmethod
    @abstractmethod
    def validate(cls, obj: Any) -> bool:
        """Run the owning module's validator on a built object."""

    @classmethod
    def generate(cls, seed: int) -> Dict[str, Any]:
        return cls.build(seed).to_json()


class FixtureRegistry:
    """Manages registration and retrieval of fixture kinds."""

    def __init__(self):
        self._kinds: Dict[str, Type[FixtureBase]] = {}

    def register(self, name: str, fixture_class: Type[FixtureBase]):
        """Registers a fixture class."""
        if not issubclass(fixture_class, FixtureBase):
            raise TypeError("Registered class must be a subclass of FixtureBase.")
        if name in self._kinds:
            raise ValueError(f"Fixture kind '{name}' is already registered.")
        self._kinds[name] = fixture_class

    def get(self, name: str) -> Optional[Type[FixtureBase]]:
        return self._kinds.get(name)

    def list_available(self) -> List[str]:
        return list(self._kinds.keys())


_fixture_registry = FixtureRegistry()


def get_fixture_registry() -> FixtureRegistry:
    """Returns the global fixture registry instance."""
    return _fixture_registry
