"""Point-by-point blow-up of a parametrized branch.

This walk works directly on the coordinate series and never consults the
Euclidean chains, so it serves as an independent check on tableau-derived
clusters and intersection numbers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .branch import Branch
from .errors import SameBranch
from .exact_algebra import RatSeries, leading_coefficient, ord_t


@dataclass(frozen=True)
class WalkStep:
    index: int
    multiplicity: int
    parent: int | None
    prox: frozenset
    direction: tuple  # ("x",), ("y",) or ("t", a): where the next point lies
    coords: tuple  # local coordinates (X, Y) of the branch at this point


def blowup_walk(b: Branch) -> Iterator[WalkStep]:
    """Infinite sequence of points on the branch, each with its multiplicity."""
    X, Y = RatSeries(b.x), RatSeries(b.y)
    div_x = div_y = None
    k = 0
    while True:
        ox, oy = ord_t(X), ord_t(Y)
        prox = frozenset(d for d in (div_x, div_y) if d is not None)
        if ox < oy:
            direction = ("x",)
        elif ox > oy:
            direction = ("y",)
        else:
            direction = ("t", b.field.div(leading_coefficient(Y), leading_coefficient(X)))
        yield WalkStep(k, min(ox, oy), k - 1 if k else None, prox, direction, (X, Y))
        if direction[0] == "x":
            Y = Y / X
            div_x = k
        elif direction[0] == "y":
            X = X / Y
            div_y = k
        else:
            Y = Y / X - direction[1]
            div_x, div_y = k, None
        k += 1


def walk_resolution(b: Branch) -> list[WalkStep]:
    """Points up to the first one of multiplicity 1 followed by a free point."""
    out = []
    prev = None
    for step in blowup_walk(b):
        if prev is not None and prev.multiplicity == 1 and len(step.prox) == 1:
            return out
        out.append(step)
        prev = step


def walk_intersection(b1: Branch, b2: Branch) -> int:
    """Sum of multiplicity products over the common points of two branches."""
    bound = b1.degree * b2.degree
    total = 0
    for s1, s2 in zip(blowup_walk(b1), blowup_walk(b2)):
        if s1.coords == s2.coords:
            raise SameBranch("branches coincide")
        total += s1.multiplicity * s2.multiplicity
        if s1.direction != s2.direction:
            return total
        if total > bound:
            # distinct branches meet with multiplicity at most deg1 * deg2
            raise SameBranch("branches share more points than distinct branches can")
    raise AssertionError("unreachable")
