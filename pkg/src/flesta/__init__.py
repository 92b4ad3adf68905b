"""
FLESTA - Filtered Long Exact Sequence Toolkit & Analysis.

Exact Novikov-ring arithmetic, gapped filtered complexes and their spectral
sequences, exact triangles, filtered A-infinity data, Maslov-type indices and
a numerically verified model Dehn twist.
"""

__version__ = "0.1.0"
