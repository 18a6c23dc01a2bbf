"""Exact local-equivalence computations for knot Floer complexes over F2[U,V]/(UV)."""

__version__ = "0.1.0"
