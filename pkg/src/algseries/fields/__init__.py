"""Exact arithmetic in finite towers of algebraic extensions."""
from __future__ import annotations

from .tower import INSEPARABLE, SEPARABLE, FieldElement, Tower, make_field

__all__ = ["INSEPARABLE", "SEPARABLE", "FieldElement", "Tower", "make_field"]
