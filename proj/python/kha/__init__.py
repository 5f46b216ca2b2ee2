"""K-theoretic Hall algebra toolkit.

Functions take and return JSON documents in the same formats as the ``kha`` CLI.
"""

import json

from . import _core
from ._core import KhaError, SchemaError, run_cli

__all__ = ["KhaError", "SchemaError", "hn_strata", "multiply", "relation_search", "run_cli"]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def multiply(workspace, f, g):
    """Shuffle product f * g; arguments are documents or JSON text."""
    return json.loads(_core.multiply(_text(workspace), _text(f), _text(g)))


def hn_strata(quiver, theta, d):
    """Harder-Narasimhan strata of dimension vector d."""
    return json.loads(_core.hn_strata(_text(quiver), _text(theta), _text(d)))


def relation_search(r_max=3, q_powers=(1, -1, 2, -2)):
    """Searches q^k for the constant in the quadratic Jordan relations."""
    return json.loads(_core.relation_search(r_max, list(q_powers)))
