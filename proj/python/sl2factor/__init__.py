"""Exact elementary-matrix factorization in SL2 over S-integer rings.

Thin wrappers over the compiled core. Rings, elements and matrices travel as
text ("Q[1/6]", "1+2*w", "[[7,5],[4,3]]"), words as JSON; the dict-returning
helpers decode the JSON here.
"""

import json

from ._core import (
    canonicalize_json,
    chain_json,
    eval_word_str,
    factor_json,
    fundamental_unit,
    min_word_length,
    oracle_histogram_csv,
    recommended_depth,
    ring_name,
    stats_csv,
    verify,
)

__all__ = [
    "canonicalize_json",
    "chain",
    "chain_json",
    "eval_word_str",
    "factor",
    "factor_json",
    "fundamental_unit",
    "min_word_length",
    "oracle_histogram_csv",
    "recommended_depth",
    "ring_name",
    "stats_csv",
    "verify",
]


def factor(ring, matrix, **kwargs):
    """Factor a matrix; returns the result as a dict (see factor_json)."""
    return json.loads(factor_json(ring, matrix, **kwargs))


def chain(ring, a, b, **kwargs):
    """Find a terminating division chain; returns it as a dict."""
    return json.loads(chain_json(ring, a, b, **kwargs))
