"""Finite fields of characteristic 2, polynomials over them, and the surface models."""

from .fields import F2, F4, F16, F64, Field, embedding, gf
from .poly import FqPolynomial

__all__ = ["F2", "F4", "F16", "F64", "Field", "FqPolynomial", "embedding", "gf"]
