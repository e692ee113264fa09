"""Instantaneous stabilizer group codes: analysis, detectors and Pauli webs."""

__version__ = "0.1.0"
