"""Parametrized plane branches through the origin."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping

from .errors import BothZero, InputError, NotPrimitive, NotThroughOrigin
from .exact_algebra import FieldSpec, UniPoly, format_poly, parse_field, parse_poly

X_REGULAR = "XRegular"
Y_REGULAR = "YRegular"
TANGENT = "Tangent"
UNIT_TIMES_X = "UnitTimesX"
UNIT_TIMES_Y = "UnitTimesY"


@dataclass(frozen=True)
class Branch:
    x_of_t: UniPoly
    y_of_t: UniPoly
    field: FieldSpec

    @property
    def x(self) -> UniPoly:
        return self.x_of_t

    @property
    def y(self) -> UniPoly:
        return self.y_of_t

    @property
    def degree(self) -> int:
        return max(self.x_of_t.degree, self.y_of_t.degree, 1)

    def swapped(self) -> "Branch":
        return Branch(self.y_of_t, self.x_of_t, self.field)

    def __str__(self):
        return f"({format_poly(self.x_of_t)}, {format_poly(self.y_of_t)}) over {self.field}"


def make_branch(x: UniPoly, y: UniPoly, field: FieldSpec | None = None) -> Branch:
    """Validate and build a branch ``t -> (x(t), y(t))``.

    A coordinate that vanishes identically makes the branch a coordinate
    axis; the other coordinate must then have order one, since higher
    order would trace the axis several times.
    """
    field = field or x.field
    if x.field != field or y.field != field:
        raise ValueError("parametrization and field disagree")
    if x.is_zero() and y.is_zero():
        raise BothZero("x(t) and y(t) are both zero")
    if x[0] != 0 or y[0] != 0:
        raise NotThroughOrigin("(x(0), y(0)) must be (0, 0)")
    if x.is_zero() or y.is_zero():
        live = y if x.is_zero() else x
        if live.ord() != 1:
            raise NotPrimitive(
                f"axis parametrized with order {live.ord()}; expected order 1")
    else:
        g = 0
        for e in x.exponents() + y.exponents():
            g = gcd(g, e)
        if g > 1:
            raise NotPrimitive(f"all exponents divisible by {g}")
    return Branch(x, y, field)


def branch_valuation(b: Branch, g: Mapping[tuple, object]):
    """Order in ``t`` of ``g(x(t), y(t))`` for ``g = {(i, j): coeff}``; ``INF`` if it vanishes."""
    f = b.field
    total = UniPoly(f)
    xpow = {0: UniPoly(f, [1])}
    ypow = {0: UniPoly(f, [1])}

    def power(cache, base, n):
        if n not in cache:
            cache[n] = base ** n
        return cache[n]

    for (i, j), c in g.items():
        c = f(c)
        if c == 0:
            continue
        total = total + power(xpow, b.x, i) * power(ypow, b.y, j) * c
    return total.ord()


@dataclass(frozen=True)
class RegularityClass:
    kind: str
    multiplicity: int
    tangent: tuple | None = None  # (lambda, mu) of the tangent line lambda*x + mu*y


def regularity_class(b: Branch) -> RegularityClass:
    if b.x.is_zero():
        return RegularityClass(UNIT_TIMES_X, 1)
    if b.y.is_zero():
        return RegularityClass(UNIT_TIMES_Y, 1)
    c1, p1 = b.x.ord(), b.y.ord()
    if c1 < p1:
        return RegularityClass(Y_REGULAR, c1)
    if c1 > p1:
        return RegularityClass(X_REGULAR, p1)
    f = b.field
    omega = f.div(b.y[p1], b.x[c1])
    return RegularityClass(TANGENT, c1, (f.reduce(-omega), f.one))


# ----------------------------------------------------------------------
# branch files
# ----------------------------------------------------------------------
def parse_branch_text(text: str) -> Branch:
    """Read the ``field:`` / ``x:`` / ``y:`` key format; ``#`` starts a comment line."""
    entries: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = raw.partition(":")
        key = key.strip()
        if not sep or key not in ("field", "x", "y"):
            raise InputError(f"expected 'field:', 'x:' or 'y:', got {line!r}",
                             line=lineno, column=1)
        if key in entries:
            raise InputError(f"duplicate key {key!r}", line=lineno, column=1)
        entries[key] = (value, lineno, len(key) + 2 + (len(raw) - len(raw.lstrip())))
    for key in ("field", "x", "y"):
        if key not in entries:
            raise InputError(f"missing '{key}:' line")

    def located(key, fn, *args):
        value, lineno, offset = entries[key]
        try:
            return fn(value, *args)
        except InputError as exc:
            col = None if exc.column is None else exc.column + offset - 1
            raise type(exc)(exc.message, line=lineno, column=col) from None

    field = located("field", parse_field)
    x = located("x", parse_poly, field)
    y = located("y", parse_poly, field)
    try:
        return make_branch(x, y, field)
    except (NotThroughOrigin, BothZero, NotPrimitive) as exc:
        raise InputError(f"invalid branch: {exc}", line=entries["x"][1]) from None


def read_branch_file(path) -> Branch:
    with open(path, encoding="utf-8") as fh:
        return parse_branch_text(fh.read())


def format_branch_text(b: Branch) -> str:
    return f"field: {b.field}\nx: {format_poly(b.x)}\ny: {format_poly(b.y)}\n"
