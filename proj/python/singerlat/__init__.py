"""Exact arithmetic for Singer-cycle lattices in PGL_d(F_q((t)))."""

import json
from fractions import Fraction

from ._core import (
    FieldParams,
    SingerlatError,
    gaussian_binomial,
    h_psl_index,
    n_psl_formula,
    neighbor_count,
    psl_case,
)
from . import _core

__all__ = [
    "FieldParams",
    "SingerlatError",
    "covolume",
    "export_ball",
    "gaussian_binomial",
    "h_psl_index",
    "n_psl_formula",
    "neighbor_count",
    "psl_case",
    "table",
    "verify",
]


def covolume(stabilizer_orders):
    """Sum of 1/|G_v| over the vertex classes, as a Fraction."""
    return Fraction(*_core.covolume(list(stabilizer_orders)))


def verify(q, d, **kwargs):
    """Run the claim suite for one (q, d) and return the report as a dict."""
    return json.loads(_core.verify_json(q, d, **kwargs))


def table(grid="default", precision=24):
    """Covolume and index rows for a grid of (d, q) pairs."""
    return json.loads(_core.table_json(grid, precision))["rows"]


def export_ball(q, d, radius, format="json"):
    """The ball around v0 as a dict (json) or DOT text."""
    text = _core.export_ball(q, d, radius, format)
    return json.loads(text) if format == "json" else text
