"""Synchronized planarity solver.

The native functions take and return JSON text; the wrappers here accept
plain Python objects as well.
"""

import json as _json

from . import _syncplan

__all__ = ["solve", "check", "oracle", "generate", "reduce"]


def _text(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def solve(instance):
    """Return a dict with satisfiable, ops_applied, potential_initial and witness."""
    out = _syncplan.solve(_text(instance))
    if out["witness"] is not None:
        out["witness"] = _json.loads(out["witness"])
    return out


def check(instance, witness):
    return _syncplan.check(_text(instance), _text(witness))


def oracle(instance, budget=None):
    if budget is None:
        return _syncplan.oracle(_text(instance))
    return _syncplan.oracle(_text(instance), budget)


def generate(family, size, seed=1):
    return _json.loads(_syncplan.generate(family, size, seed))


def reduce(kind, source):
    """Map a clustered, sefe, pqc or atomic source instance to a SyncPlan instance."""
    return _json.loads(_syncplan.reduce(kind, _text(source)))
