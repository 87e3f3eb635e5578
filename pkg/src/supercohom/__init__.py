"""Exact equivariant cohomology and deformations of Lie superalgebras."""

__version__ = "0.1.0"
