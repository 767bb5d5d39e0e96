"""Discrepancy of sums of two arithmetic progressions."""

import json

from ._apdisc import (
    MIN_N,
    ApdiscError,
    dirichlet_approx,
    edge_cardinality,
    edge_elements,
    gcd,
    indicator_fourier,
    mod_inverse_pair,
)
from . import _apdisc

__all__ = [
    "MIN_N",
    "ApdiscError",
    "certify",
    "dirichlet_approx",
    "disc",
    "edge_cardinality",
    "edge_elements",
    "family_stats",
    "gcd",
    "indicator_fourier",
    "mod_inverse_pair",
    "two_norm",
]


def certify(alpha: str, n: int) -> dict:
    return json.loads(_apdisc.certify_json(alpha, n))


def family_stats(n: int) -> dict:
    return json.loads(_apdisc.family_stats_json(n))


def two_norm(values) -> dict:
    return json.loads(_apdisc.two_norm_json(list(values)))


def disc(n: int, method: str = "exact", budget: int = 10, seed: int = 1) -> dict:
    return json.loads(_apdisc.disc_json(n, method, budget, seed))
