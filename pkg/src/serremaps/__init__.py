"""Serre characteristics of moduli of maps from curves to projective space."""

__version__ = "0.1.0"
ENGINE_VERSION = "1"
