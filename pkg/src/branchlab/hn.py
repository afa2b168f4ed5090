"""Hamburger-Noether tableaux of parametrized branches.

Each column ``(p, c, a)`` of a tableau comes from one Euclidean chain on the
valuations of the current regular parameters: ``p = v(y)``, ``c = v(x)`` and
``a`` the unique nonzero constant making the last division step jump in
valuation.  Columns are generated lazily, so a tableau can always be
extended when its source branch is known.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator

from .branch import Branch, make_branch
from .errors import (
    InsufficientColumns,
    NonPositiveValuation,
    NotPrimitive,
    RequiresMinimalPolicy,
    UnrealizableTableau,
)
from .exact_algebra import INF, FieldSpec, RatSeries, UniPoly, coeff_at, ord_t


def gcd_inf(a, b):
    """gcd with the convention ``gcd(x, INF) = x``."""
    if a == INF:
        return b
    if b == INF:
        return a
    return gcd(a, b)


def euclid_quotients(v0: int, v1: int) -> tuple[list[int], list[int]]:
    """Quotients ``s_1..s_kappa`` and remainders ``v0, v1, ..., gcd, 0`` of the chain."""
    vals = [v0, v1]
    quots = []
    while vals[-1] != 0:
        q, r = divmod(vals[-2], vals[-1])
        quots.append(q)
        vals.append(r)
    return quots, vals


@dataclass(frozen=True)
class EuclidChain:
    s_list: tuple
    kappa: int
    eta_vals: tuple
    a: object
    m: int
    next_x: RatSeries
    next_y: RatSeries


def euclid_chain(eta0: RatSeries, eta1: RatSeries) -> EuclidChain:
    """Divide ``eta_{i-1} = eta_i**s_i * eta_{i+1}`` until a unit appears."""
    v0, v1 = ord_t(eta0), ord_t(eta1)
    if v0 == INF or v1 == INF or v0 <= 0 or v1 <= 0:
        raise NonPositiveValuation(f"valuations ({v0}, {v1}) must be finite and positive")
    etas = [eta0, eta1]
    s_list = []
    while ord_t(etas[-1]) > 0:
        q = ord_t(etas[-2]) // ord_t(etas[-1])
        s_list.append(q)
        etas.append(etas[-2] / etas[-1] ** q)
    kappa = len(s_list)
    unit = etas[kappa + 1]
    a = coeff_at(unit, 0)
    return EuclidChain(
        s_list=tuple(s_list),
        kappa=kappa,
        eta_vals=tuple(ord_t(e) for e in etas),
        a=a,
        m=sum(s_list),
        next_x=etas[kappa],
        next_y=unit - a,
    )


@dataclass(frozen=True)
class Column:
    p: object
    c: object
    a: object  # field element, 0 on infinite columns, INF as the end marker

    @property
    def degenerate(self) -> bool:
        return self.p == INF or self.c == INF

    @property
    def ratio(self):
        """``p/c`` with ``INF`` when ``p`` is infinite and 0 when ``c`` is."""
        if self.p == INF:
            return INF
        if self.c == INF:
            return Fraction(0)
        return Fraction(self.p, self.c)


class Expansion:
    """Lazily realized columns of a branch, with the parameters that produced them."""

    def __init__(self, branch: Branch):
        self.branch = branch
        self.columns: list[Column] = []
        self.chains: list[EuclidChain | None] = []
        self.params: list[tuple[RatSeries, RatSeries]] = []
        self._gen = self._generate()

    def _generate(self) -> Iterator:
        b = self.branch
        x, y = RatSeries(b.x), RatSeries(b.y)
        while True:
            if x.is_zero() or y.is_zero():
                col = Column(ord_t(y), ord_t(x), b.field.zero)
                if min(col.p, col.c) > 1:
                    raise NotPrimitive(
                        f"expansion became an axis of order {min(col.p, col.c)}: "
                        "the parametrization covers its image more than once")
                while True:
                    yield col, None, (x, y)
            chain = euclid_chain(y, x)
            yield Column(ord_t(y), ord_t(x), chain.a), chain, (x, y)
            x, y = chain.next_x, chain.next_y

    def column(self, i: int) -> Column:
        """Realized column ``i`` (1-based)."""
        while len(self.columns) < i:
            col, chain, params = next(self._gen)
            self.columns.append(col)
            self.chains.append(chain)
            self.params.append(params)
        return self.columns[i - 1]

    def chain(self, i: int) -> EuclidChain | None:
        self.column(i)
        return self.chains[i - 1]

    def parameters(self, i: int) -> tuple[RatSeries, RatSeries]:
        self.column(i)
        return self.params[i - 1]


@functools.lru_cache(maxsize=1024)
def expansion(branch: Branch) -> Expansion:
    return Expansion(branch)


# ----------------------------------------------------------------------
# tableaux
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class HNTableau:
    columns: tuple
    m_list: tuple
    field: FieldSpec
    terminated: bool = True
    source: Branch | None = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.columns)

    @property
    def p(self):
        return tuple(col.p for col in self.columns)

    @property
    def c(self):
        return tuple(col.c for col in self.columns)

    @property
    def a(self):
        return tuple(col.a for col in self.columns)

    @property
    def triples(self):
        return tuple((col.p, col.c, col.a) for col in self.columns)

    def realized(self, i: int) -> Column | None:
        """Column ``i`` with its actual coefficient, expanding the source if needed.

        Returns ``None`` when the column is neither stored nor derivable.
        """
        if self.source is not None:
            return expansion(self.source).column(i)
        if i <= len(self.columns):
            return self.columns[i - 1]
        return None

    def parameters(self, i: int):
        if self.source is None:
            return None
        return expansion(self.source).parameters(i)


def make_tableau(triples, field: FieldSpec, terminated: bool = True) -> HNTableau:
    """Build an abstract tableau from ``(p, c, a)`` triples; ``m`` follows from Euclid."""
    cols = []
    for p, c, a in triples:
        if a != INF and not (p == INF or c == INF):
            a = field(a)
        cols.append(Column(p, c, a))
    m_list = tuple(0 if col.degenerate else sum(euclid_quotients(col.p, col.c)[0])
                   for col in cols)
    return HNTableau(tuple(cols), m_list, field, terminated)


@dataclass(frozen=True)
class Minimal:
    pass


@dataclass(frozen=True)
class ToColumns:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ToColumns needs n >= 1")


@dataclass(frozen=True)
class UntilDistinguishedFrom:
    other: HNTableau


MINIMAL = Minimal()


def _column_cap(b: Branch) -> int:
    # every non-final column holds a point of multiplicity >= 2, and the
    # delta invariant at the origin is below deg**2
    return b.degree ** 2 + 2


def hn_tableau(b: Branch, policy=MINIMAL) -> HNTableau:
    exp = expansion(b)
    if isinstance(policy, Minimal):
        cols = []
        i = 0
        while True:
            i += 1
            if i > _column_cap(b):
                raise NotPrimitive("characteristic gcd never reaches 1")
            col = exp.column(i)
            cols.append(col)
            if col.degenerate or gcd_inf(col.c, col.p) == 1:
                break
        if not cols[-1].degenerate:
            last = cols[-1]
            cols[-1] = Column(last.p, last.c, INF)
        m_list = tuple(0 if exp.chain(k) is None else exp.chain(k).m
                       for k in range(1, len(cols) + 1))
        return HNTableau(tuple(cols), m_list, b.field, True, b)
    if isinstance(policy, ToColumns):
        n = policy.n
    elif isinstance(policy, UntilDistinguishedFrom):
        n = first_divergence(HNTableau((), (), b.field, False, b), policy.other)
        if n is None:
            n = max(1, len(policy.other))
    else:
        raise TypeError(f"unknown depth policy {policy!r}")
    cols = tuple(exp.column(i) for i in range(1, n + 1))
    m_list = tuple(0 if exp.chain(k) is None else exp.chain(k).m for k in range(1, n + 1))
    return HNTableau(cols, m_list, b.field, False, b)


def columns_agree(c1: Column, c2: Column):
    """True/False when decidable, ``None`` when an end marker hides a coefficient."""
    if c1.ratio != c2.ratio:
        return False
    if c1.a == INF or c2.a == INF:
        return None
    return c1.a == c2.a


def first_divergence(t1: HNTableau, t2: HNTableau):
    """Index of the first column where the expansions differ; ``None`` if identical."""
    bound = None
    if t1.source is not None and t2.source is not None:
        bound = t1.source.degree * t2.source.degree
    weight = 0
    i = 0
    while True:
        i += 1
        c1, c2 = t1.realized(i), t2.realized(i)
        if c1 is None or c2 is None:
            raise InsufficientColumns(f"column {i} is needed but unavailable")
        agree = columns_agree(c1, c2)
        if agree is None:
            raise InsufficientColumns(
                f"column {i} coefficient is hidden by the end marker")
        if not agree:
            return i
        if c1.degenerate and c2.degenerate:
            return None
        if t1.source is not None and t2.source is not None:
            if t1.parameters(i) == t2.parameters(i):
                return None
            weight += c1.p * c2.c
            # distinct branches meet with multiplicity <= deg1 * deg2
            if weight > bound:
                return None


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Violation:
    code: str
    column: int | None
    message: str

    def __str__(self):
        where = "" if self.column is None else f"column {self.column}: "
        return f"{where}{self.message}"


def tableau_validate(t: HNTableau) -> list[Violation]:
    out: list[Violation] = []
    cols = t.columns
    l = len(cols)
    if l == 0:
        return [Violation("empty", None, "tableau has no columns")]
    for i, col in enumerate(cols, start=1):
        for name in ("p", "c"):
            v = getattr(col, name)
            if v != INF and (not isinstance(v, int) or v < 1):
                out.append(Violation("range", i, f"{name}_{i} = {v} is not a positive integer"))
    if out:
        return out
    for i, col in enumerate(cols, start=1):
        last = i == l
        if col.a == INF:
            if not (last and t.terminated):
                out.append(Violation("marker", i, f"a_{i} is the end marker before the last column"))
            continue
        if last and t.terminated and not col.degenerate:
            out.append(Violation("marker", i, f"a_{i} must be the end marker"))
        if col.degenerate and col.a != 0:
            out.append(Violation("zero-a", i, f"a_{i} must be 0 on an infinite column"))
        if not col.degenerate and col.a == 0:
            out.append(Violation("zero-a", i, f"a_{i} = 0 on a finite column"))
    for i in range(1, l):
        cur, nxt = cols[i - 1], cols[i]
        if cur.p == INF and (nxt.p != INF or nxt.c != cur.c):
            out.append(Violation("inf-p", i + 1, f"p_{i} = inf forces p_{i + 1} = inf, c_{i + 1} = c_{i}"))
        if cur.c == INF and (nxt.c != INF or nxt.p != cols[0].p):
            out.append(Violation("inf-c", i + 1, f"c_{i} = inf forces c_{i + 1} = inf, p_{i + 1} = p_1"))
        if cur.c != INF and cur.p != INF and nxt.c != gcd(cur.c, cur.p):
            out.append(Violation("gcd", i + 1, f"c_{i + 1} != gcd(c_{i}, p_{i})"))
        if cur.c != INF and nxt.c != INF and nxt.c > cur.c:
            out.append(Violation("monotone", i + 1, f"c_{i + 1} > c_{i}"))
    end = cols[-1]
    if t.terminated and not end.degenerate and end.c != 1 and gcd(end.c, end.p) != 1:
        out.append(Violation("final-gcd", l, f"c_{l} > 1 and gcd(c_{l}, p_{l}) > 1"))
    return out


# ----------------------------------------------------------------------
# resolution structure of a terminated tableau
# ----------------------------------------------------------------------
def chain_points(t: HNTableau) -> list[tuple[int, int | None, tuple]]:
    """Points ``(multiplicity, parent, proximity targets)`` along all column chains.

    Blocks of a chain alternate between dividing ``y`` by ``x`` and ``x`` by
    ``y``; the exceptional divisors through the current point are always the
    two coordinate axes, and the final translation of a chain leaves only the
    newest divisor.
    """
    first = t.columns[0]
    if first.degenerate:
        return [(min(first.p, first.c), None, ())]
    points = []
    div_x = div_y = None
    for col in t.columns:
        if col.degenerate:
            break
        quots, vals = euclid_quotients(col.p, col.c)
        total = sum(quots)
        k = 0
        for blk, s in enumerate(quots, start=1):
            mult = vals[blk]
            for _ in range(s):
                pid = len(points)
                prox = tuple(sorted(d for d in (div_x, div_y) if d is not None))
                points.append((mult, pid - 1 if pid else None, prox))
                k += 1
                if k == total:
                    div_x, div_y = pid, None
                elif blk % 2:
                    div_x = pid
                else:
                    div_y = pid
    return points


def defect_prefix(points) -> int:
    """Shortest prefix whose proximity equalities leave unit defect at its last point."""
    for n in range(1, len(points) + 1):
        mults = [m for m, _, _ in points[:n]]
        excess = list(mults)
        for tid in range(n):
            for sid in points[tid][2]:
                excess[sid] -= mults[tid]
        if excess[n - 1] == 1 and all(e == 0 for e in excess[:n - 1]):
            return n
    raise UnrealizableTableau("no prefix satisfies the proximity equalities")


def multiplicity_sequence(t: HNTableau) -> tuple[int, ...]:
    if not t.terminated:
        raise RequiresMinimalPolicy("multiplicities need a tableau ending in the end marker")
    pts = chain_points(t)
    n = defect_prefix(pts)
    return tuple(m for m, _, _ in pts[:n])


# ----------------------------------------------------------------------
# synthesis
# ----------------------------------------------------------------------
def synthesize_branch(t: HNTableau, last_coefficient=1) -> Branch:
    """A polynomial branch realizing ``t``; the last column is ``(t**c_l, k*t**p_l)``.

    Works backwards through the chains: ``eta_kappa`` is the next ``x`` and
    ``eta_{kappa+1}`` the next ``y`` plus ``a``, and each earlier ``eta`` is
    the product ``eta_i**s_i * eta_{i+1}``.  ``last_coefficient`` (the ``k``
    above) selects among branches sharing all but the final coefficient.
    """
    problems = tableau_validate(t)
    if problems:
        raise UnrealizableTableau("; ".join(str(v) for v in problems))
    f = t.field
    cols = t.columns
    if any(col.degenerate for col in cols):
        raise UnrealizableTableau("infinite columns cannot be synthesized")
    for i, col in enumerate(cols[:-1], start=1):
        if col.a == INF or col.a == 0:
            raise UnrealizableTableau(f"a_{i} must be a nonzero field element")
    last = cols[-1]
    k = f(last_coefficient)
    if k == 0:
        raise UnrealizableTableau("last coefficient must be nonzero")
    x = UniPoly.monomial(f, last.c)
    y = UniPoly.monomial(f, last.p, k)
    for col in reversed(cols[:-1]):
        quots, _ = euclid_quotients(col.p, col.c)
        kappa = len(quots)
        etas = [None] * (kappa + 2)
        etas[kappa] = x
        etas[kappa + 1] = y + col.a
        for i in range(kappa, 0, -1):
            etas[i - 1] = etas[i] ** quots[i - 1] * etas[i + 1]
        x, y = etas[1], etas[0]
    return make_branch(x, y, f)


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------
def format_entry(v, field: FieldSpec | None = None) -> str:
    if v == INF:
        return "inf"
    if field is not None and not isinstance(v, int):
        return field.format(v)
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


def render_tableau(t: HNTableau) -> str:
    rows = {
        "p": [format_entry(v) for v in t.p],
        "c": [format_entry(v) for v in t.c],
        "a": [format_entry(v, t.field) for v in t.a],
    }
    widths = [max(len(rows[k][i]) for k in rows) for i in range(len(t))]
    lines = []
    for k, vals in rows.items():
        cells = "  ".join(v.ljust(w) for v, w in zip(vals, widths))
        lines.append(f"{k}: {cells}".rstrip())
    return "\n".join(lines)
