"""Custom exceptions for FLESTA."""

from typing import Optional


class FlestaError(Exception):
    """Base exception for all FLESTA application errors."""
    pass


class ConfigurationError(FlestaError):
    """Errors related to configuration loading, validation, or interpretation."""
    pass


class InputError(FlestaError):
    """Raised when an input document does not match its schema.

    The offending location is kept as a JSON pointer so the CLI can print it.
    """

    def __init__(self, message: str, pointer: Optional[str] = None):
        self.pointer = pointer or ""
        super().__init__(f"{message} (at '{self.pointer}')" if pointer is not None else message)


# Novikov arithmetic
class NovikovError(FlestaError):
    """Errors raised by Novikov ring arithmetic."""
    pass


class OddIndex(NovikovError):
    """Raised when a Maslov index is odd and half e-exponents are disabled."""
    pass


class NotInvertible(NovikovError):
    """Raised when a nonzero scalar has no invertible leading term."""
    pass


# Filtered complexes
class ComplexError(FlestaError):
    """Errors related to filtered complexes and filtered maps."""
    pass


class NotAComplex(ComplexError):
    """Raised when an assembled differential does not square to zero."""
    pass


class ZeroMap(ComplexError):
    """Raised when the order of the zero map is requested."""
    pass


class InconsistentEquivalence(ComplexError):
    """Raised when two decorations of one intersection point disagree."""
    pass


class UnsupportedGrading(ComplexError):
    """Raised when a differential entry carries an e-exponent where elimination needs degree zero."""
    pass


# Spectral sequences
class SpectralError(FlestaError):
    """Errors raised by the spectral sequence engine."""
    pass


class NonGapped(SpectralError):
    """Raised when pages are requested for a complex that is not gapped for the chosen step."""
    pass


class CapTooSmall(SpectralError):
    """Raised when the energy cap does not cover the requested pages."""
    pass


class NotStabilized(SpectralError):
    """Raised when the computed pages have not stabilized."""
    pass


class CertificationError(SpectralError):
    """Raised when a certified statement disagrees with its elimination cross-check."""
    pass


# Exact triangles
class TriangleError(FlestaError):
    """Errors related to triangle data and long exact sequences."""
    pass


class HypothesisFailed(TriangleError):
    """Raised when a premise of a vanishing or exactness lemma does not hold."""

    def __init__(self, message: str, failures: Optional[list] = None):
        self.failures = list(failures or [])
        super().__init__(message)


class ExactnessFailure(TriangleError):
    """Raised when a node of a long exact sequence is not exact."""

    def __init__(self, message: str, node: int = -1, ranks: Optional[dict] = None):
        self.node = node
        self.ranks = dict(ranks or {})
        super().__init__(message)


# A-infinity structures
class AInftyError(FlestaError):
    """Errors related to filtered A-infinity data."""
    pass


class DivergenceRisk(AInftyError):
    """Raised when a cochain of valuation zero is inserted into an infinite sum."""
    pass


class SquareNonzero(AInftyError):
    """Raised when a deformed bimodule differential does not square to zero."""
    pass


# Index computations
class IndexLabError(FlestaError):
    """Errors raised by Maslov-type index computations."""
    pass


class NotLagrangian(IndexLabError):
    """Raised when a frame does not span a Lagrangian subspace."""
    pass


class NotClosed(IndexLabError):
    """Raised when a loop does not return to its starting subspace."""
    pass


class SamplingTooCoarse(IndexLabError):
    """Raised when consecutive samples are too far apart to track a winding."""
    pass


class DegenerateCrossing(IndexLabError):
    """Raised when an interior crossing has a singular crossing form."""
    pass


class CornerMismatch(IndexLabError):
    """Raised when boundary edges of a square do not meet at the corners."""
    pass


class JumpTooLarge(IndexLabError):
    """Raised when a phase lift would jump between consecutive samples."""
    pass


# Dehn twist model
class DehnError(FlestaError):
    """Errors raised by the model Dehn twist."""
    pass


class ZeroSection(DehnError):
    """Raised when the geodesic flow is evaluated on the zero section at a generic angle."""
    pass


class OnSingularity(DehnError):
    """Raised when the polar map is evaluated at the origin."""
    pass


class InvalidProfile(DehnError):
    """Raised when a twist profile violates its structural constraints."""
    pass


class ReportingError(FlestaError):
    """Errors related to report generation or presentation."""
    pass


class WorkflowError(FlestaError):
    """Raised when workflow execution fails."""
    pass


class CLIError(FlestaError):
    """Base exception for CLI-specific errors."""
    pass


class VerifiedNegative(CLIError):
    """Raised after a report was written whose mathematical verdict is negative."""
    pass
