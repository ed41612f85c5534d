"""Built-in space fixtures: the ten four-point lists as printed.

The lists pass through ``validate_topology`` on load; discrepancies are
reported by the validator, never corrected here.  A fixture directory can
be overridden with the FILTK_FIXTURES environment variable, pointing at a
directory of ``<name>.json`` space datasheets.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .spaces import space_from_json, validate_topology

_P = ("1", "2", "3", "4")


def _sets(*subsets):
    return [frozenset(s) for s in subsets]


PRINTED_OPENS = {
    "X1": _sets((), ("4",), ("1", "4"), ("2", "4"), ("3", "4"),
                ("1", "2", "4"), ("1", "3", "4"), ("2", "3", "4"), _P),
    "X2": _sets((), ("4",), ("3", "4"), ("2", "3", "4"), ("1", "3", "4"), _P),
    "X3": _sets((), ("4",), ("3", "4"), ("2", "4"), ("2", "3", "4"), _P),
    "X4": _sets((), ("1",), ("2",), ("3",), ("1", "2"), ("1", "3"),
                ("2", "3"), ("1", "2", "3"), _P),
    "X5": _sets((), ("1",), ("2",), ("1", "2"), ("1", "2", "3"), _P),
    "X6": _sets((), ("3",), ("4",), ("3", "4"), ("1", "3", "4"), ("2", "3", "4"), _P),
    "X7": _sets((), ("1",), ("1", "2"), ("1", "2", "3"), _P),
    "X8": _sets((), ("1",), ("4",), ("1", "2"), ("1", "4"),
                ("1", "2", "3"), ("1", "2", "4"), _P),
    "X9": _sets((), ("1",), ("3",), ("1", "3"), ("3", "4"),
                ("1", "2", "3"), ("1", "3", "4"), _P),
    "X10": _sets((), ("2",), ("1", "2"), ("2", "3"), ("1", "2", "3"), ("2", "3", "4"), _P),
}

SPACE_NAMES = tuple(PRINTED_OPENS)


def fixture_dir():
    path = os.environ.get("FILTK_FIXTURES")
    return Path(path) if path else None


def load_space(name):
    """Load a named space, validating it; raises on invalid topologies."""
    d = fixture_dir()
    if d is not None:
        candidate = d / f"{name}.json"
        if candidate.exists():
            return space_from_json(json.loads(candidate.read_text()))
    if name in PRINTED_OPENS:
        return validate_topology(_P, PRINTED_OPENS[name], name=name)
    raise KeyError(f"unknown space fixture {name!r}")
