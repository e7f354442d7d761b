"""Exact verification toolkit for a supersingular K3 surface in characteristic 2
and its Leech-lattice description."""

__version__ = "0.1.0"
