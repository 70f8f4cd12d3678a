"""Numerical checks for intrinsic Lipschitz graphs in metric groups."""

import json as _json

from ._core import (  # noqa: F401
    Error,
    IntrinsicMap,
    InvalidSpec,
    Splitting,
    group,
    map,
    shipped_groups,
    shipped_maps,
)
from . import _core

__all__ = [
    "Error",
    "IntrinsicMap",
    "InvalidSpec",
    "Splitting",
    "estimate",
    "group",
    "map",
    "shipped_groups",
    "shipped_maps",
    "verify",
]


def verify(group, suite="all", samples=10000, seed=1, map=None, exhaustive=False, box=None):
    """Run a check suite and return the report as a dict."""
    return _json.loads(_core.verify_json(group, suite, samples, seed, map, exhaustive, box))


def estimate(group, map="const:0", samples=10000, seed=1, exhaustive=False, box=None):
    """Sampled constants of one map, as a dict."""
    return _json.loads(_core.estimate_json(group, map, samples, seed, exhaustive, box))
