"""Sampling algorithms, adversaries and entropy estimates for ridge function classes."""

__version__ = "0.1.0"

__all__ = ["__version__"]
