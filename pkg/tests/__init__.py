"""
Test package for FLESTA.
"""
