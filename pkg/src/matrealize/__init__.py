"""Realization spaces of small matroids: enumeration, normal-frame templates,
defining polynomial systems and irreducibility certificates."""

__version__ = "0.1.0"
