"""Rank-n linear sets on PG(1, q^n): intersections, curve bounds and BEL semifields."""

from __future__ import annotations

from .field import FieldCtx, field_for, make_field
from .linset import LinearSet, build, classify, intersect, meets
from .qpoly import QPoly, adjoint, parse_qpoly

__version__ = "0.1.0"

__all__ = [
    "FieldCtx",
    "LinearSet",
    "QPoly",
    "adjoint",
    "build",
    "classify",
    "field_for",
    "intersect",
    "make_field",
    "meets",
    "parse_qpoly",
]
