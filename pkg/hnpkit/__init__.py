"""Parametric Hilbert Nullstellensatz toolkit: exact decision, certificates and the randomized reduction."""

__version__ = "0.1.0"
