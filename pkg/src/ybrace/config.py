"""Size bounds for the exhaustive searches.

The values are process-wide and are only meant to be changed once, at start-up,
by the command line front end (or by tests through :func:`configured`).
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass


@dataclass
class Bounds:
    subgroups: int = 400
    holomorph: int = 5000


bounds = Bounds()


@contextlib.contextmanager
def configured(subgroups: int | None = None, holomorph: int | None = None):
    saved = (bounds.subgroups, bounds.holomorph)
    if subgroups is not None:
        bounds.subgroups = subgroups
    if holomorph is not None:
        bounds.holomorph = holomorph
    try:
        yield bounds
    finally:
        bounds.subgroups, bounds.holomorph = saved
