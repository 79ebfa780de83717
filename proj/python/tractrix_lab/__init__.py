"""Bicycle tracks, monodromy, the hatchet planimeter and the critical wheelbase.

Curves are given as dicts in the same format as the JSON curve specs read by
the command-line tool, e.g. ``{"kind": "ellipse", "a": 2, "b": 1}``. Results
come back as plain dicts and lists.
"""

import json as _json

from . import _core
from ._core import NumericalError, ValidationError

__all__ = [
    "NumericalError",
    "ValidationError",
    "curve_summary",
    "develop",
    "hpz",
    "loop_identity",
    "menzin",
    "monodromy",
    "planimeter",
    "run_cli",
    "trace",
]


def _spec(curve):
    return curve if isinstance(curve, str) else _json.dumps(curve)


def curve_summary(curve):
    return _json.loads(_core.curve_summary(_spec(curve)))


def trace(curve, ell, alpha0, anchor=0.0, steps=4096):
    return _json.loads(_core.trace(_spec(curve), ell, alpha0, anchor, steps))


def monodromy(curve, ell, steps=4096):
    return _json.loads(_core.monodromy(_spec(curve), ell, steps))


def planimeter(curve, ell, base=0.0, start="centroid"):
    return _json.loads(_core.planimeter(_spec(curve), ell, base, start))


def menzin(curve, cap=10.0):
    return _json.loads(_core.menzin(_spec(curve), cap))


def develop(curve, steps=4096):
    return _json.loads(_core.develop(_spec(curve), steps))


def hpz(curve, ell):
    return _json.loads(_core.hpz(_spec(curve), ell))


def loop_identity(x, y, theta, ell=1.0):
    return _json.loads(_core.loop_identity(list(x), list(y), list(theta), ell))


def run_cli(*args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
