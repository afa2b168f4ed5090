"""Contact order, intersection numbers, approximations and resolution clusters."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .blowup import walk_intersection, walk_resolution
from .branch import Branch, make_branch
from .cluster import Cluster, ClusterPoint, curvette_gram, inverse_proximity, proximity_matrix
from .errors import (
    IndexOutOfRange,
    InsufficientColumns,
    NonIntegerScaling,
    NotCharacteristicIndex,
    OracleInapplicable,
    SameBranch,
)
from .exact_algebra import INF, UniPoly, poly_gcd, resultant
from .hn import (
    Column,
    HNTableau,
    chain_points,
    defect_prefix,
    expansion,
    first_divergence,
    hn_tableau,
    make_tableau,
    synthesize_branch,
)
from .invariants import characteristic_data, characteristic_indices


# ----------------------------------------------------------------------
# contact and the tableau formula
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ContactData:
    s: object  # int or INF
    first_divergence: int | None


def contact_order(t1: HNTableau, t2: HNTableau) -> ContactData:
    """Length of the agreeing column prefix (ratio ``p/c`` and coefficient ``a``)."""
    div = first_divergence(t1, t2)
    if div is None:
        return ContactData(INF, None)
    return ContactData(div - 1, div)


def _ratio(p, c):
    if p == INF:
        return INF
    if c == INF:
        return Fraction(0)
    return Fraction(p, c)


def _columns(t: HNTableau, n: int) -> list[Column]:
    out = []
    for i in range(1, n + 1):
        col = t.realized(i)
        if col is None:
            raise InsufficientColumns(f"column {i} is needed but unavailable")
        out.append(col)
    return out


def proportionality_conditions(t1: HNTableau, t2: HNTableau, s: int) -> tuple:
    """The three ratio conditions over columns ``1..s`` and their stated consequence.

    Returns ``(first, all_pairs, diagonal, consequence)``; the first three are
    equivalent for genuine tableaux and each implies the fourth, which
    compares ``p_j`` and ``c_j`` against column ``s + 1``.
    """
    a, b = _columns(t1, s + 1), _columns(t2, s + 1)
    cond1 = all(_ratio(a[j].p, a[0].c) == _ratio(b[j].p, b[0].c) for j in range(s))
    cond2 = all(_ratio(a[j].p, a[i].c) == _ratio(b[j].p, b[i].c)
                for i in range(s) for j in range(s))
    cond3 = all(_ratio(a[j].p, a[j].c) == _ratio(b[j].p, b[j].c) for j in range(s))
    cons = all(_ratio(a[j].p, a[s].c) == _ratio(b[j].p, b[s].c)
               and _ratio(a[j].c, a[s].c) == _ratio(b[j].c, b[s].c) for j in range(s))
    return cond1, cond2, cond3, cons


def proportionality_check(t1: HNTableau, t2: HNTableau, s: int) -> bool:
    cond1, cond2, cond3, _ = proportionality_conditions(t1, t2, s)
    return cond1 and cond2 and cond3


def _mul(a, b):
    return INF if INF in (a, b) else a * b


def intersection_number(t1: HNTableau, t2: HNTableau) -> int:
    """``sum_{i<=s} p_i c'_i + min(p_{s+1} c'_{s+1}, p'_{s+1} c_{s+1})``, checked against its mirror."""
    s = contact_order(t1, t2).s
    if s == INF:
        raise SameBranch("tableaux agree in every column")
    a, b = _columns(t1, s + 1), _columns(t2, s + 1)
    head1 = sum(a[i].p * b[i].c for i in range(s))
    head2 = sum(b[i].p * a[i].c for i in range(s))
    delta = min(_mul(a[s].p, b[s].c), _mul(b[s].p, a[s].c))
    if delta == INF:
        raise SameBranch("both closing terms are infinite")
    assert head1 == head2, f"asymmetric prefix sums {head1} != {head2}"
    return head1 + delta


def intersection_of_branches(b1: Branch, b2: Branch) -> int:
    return intersection_number(hn_tableau(b1), hn_tableau(b2))


# ----------------------------------------------------------------------
# elimination
# ----------------------------------------------------------------------
def resultant_applies(b: Branch) -> bool:
    """Whether ``b`` reaches the origin only at ``s = 0`` (needed to read off a local number)."""
    if b.x.is_zero():
        return b.y.degree == 1
    if b.y.is_zero():
        return b.x.degree == 1
    g = poly_gcd(b.x, b.y)
    return g.degree == g.ord()


def resultant_intersection(b1: Branch, b2: Branch):
    """``ord_t Res_s(x1(s) - x2(t), y1(s) - y2(t))``; ``INF`` when the resultant vanishes."""
    if b1.field != b2.field:
        raise ValueError("branches over different fields")
    if not resultant_applies(b1):
        if not resultant_applies(b2):
            raise OracleInapplicable("neither branch meets the origin only at parameter 0")
        b1, b2 = b2, b1
    f = b1.field

    def lift(poly_s: UniPoly, poly_t: UniPoly):
        # coefficients in s, each a polynomial in t
        coeffs = [UniPoly(f, [c]) for c in poly_s.coeffs] or [UniPoly(f)]
        coeffs[0] = coeffs[0] - poly_t
        return coeffs

    res = resultant(lift(b1.x, b2.x), lift(b1.y, b2.y))
    return INF if res.is_zero() else res.ord()


def noether_intersection(b1: Branch, b2: Branch) -> int:
    """Sum of multiplicity products over shared infinitely near points (blow-up walk)."""
    return walk_intersection(b1, b2)


@dataclass(frozen=True)
class IntersectionReport:
    tableau: object
    resultant: object
    noether: object

    @property
    def values(self) -> dict:
        return {k: v for k, v in (("tableau", self.tableau), ("resultant", self.resultant),
                                  ("noether", self.noether)) if v is not None}

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) <= 1


def intersect_all(b1: Branch, b2: Branch, methods=("tableau", "resultant", "noether")):
    out = {}
    for m in methods:
        if m == "tableau":
            try:
                out[m] = intersection_of_branches(b1, b2)
            except SameBranch:
                out[m] = INF
        elif m == "resultant":
            out[m] = resultant_intersection(b1, b2)
        elif m == "noether":
            try:
                out[m] = noether_intersection(b1, b2)
            except SameBranch:
                out[m] = INF
        else:
            raise ValueError(f"unknown method {m!r}")
    return IntersectionReport(out.get("tableau"), out.get("resultant"), out.get("noether"))


# ----------------------------------------------------------------------
# approximations
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ApproxSpec:
    mu: int
    j: int


def approx_spec(t: HNTableau, j: int) -> ApproxSpec:
    idx = characteristic_indices(t)
    if not 1 <= j <= len(idx):
        raise IndexOutOfRange(f"index {j} outside 1..{len(idx)}")
    return ApproxSpec(idx[j - 1], j)


def mu_approximation(t: HNTableau, spec: ApproxSpec | int) -> HNTableau:
    """Columns before ``mu`` scaled by ``1/c_mu``, then a closing column ``(p', 1, end)``."""
    if isinstance(spec, int):
        spec = approx_spec(t, spec)
    idx = characteristic_indices(t)
    mu = spec.mu
    if mu not in idx or idx.index(mu) + 1 != spec.j:
        raise NotCharacteristicIndex(f"column {mu} is not characteristic index {spec.j}")
    cols = _columns(t, mu)
    if any(col.degenerate for col in cols):
        raise NotCharacteristicIndex("approximation needs finite columns")
    cm = cols[-1].c
    triples = []
    for col in cols[:-1]:
        if col.p % cm or col.c % cm:
            raise NonIntegerScaling(f"c_mu = {cm} does not divide column ({col.p}, {col.c})")
        triples.append((col.p // cm, col.c // cm, col.a))
    pm = cols[-1].p
    p_new = pm if Fraction(pm, 1) != Fraction(pm, cm) else pm + 1
    triples.append((p_new, 1, INF))
    return make_tableau(triples, t.field, terminated=True)


def closed_form_iota(t: HNTableau, mu: int) -> int:
    """``sum_{i<=mu} p_i c_i / c_mu`` for the tableau being approximated."""
    cols = _columns(t, mu)
    cm = cols[-1].c
    total = sum(Fraction(col.p * col.c, cm) for col in cols)
    assert total.denominator == 1
    return int(total)


def approximation_branch(f: Branch, j: int) -> Branch:
    t = hn_tableau(f)
    return synthesize_branch(mu_approximation(t, j))


def curvette_check(f: Branch, g: Branch, j: int) -> bool:
    """True iff the intersection of ``f`` and ``g`` equals the ``j``-th semigroup generator."""
    tf = hn_tableau(f)
    cd = characteristic_data(tf)
    if not 1 <= j <= cd.h:
        raise IndexOutOfRange(f"index {j} outside 1..{cd.h}")
    return intersection_number(tf, hn_tableau(g)) == cd.sg_seq[j]


# ----------------------------------------------------------------------
# resolution cluster
# ----------------------------------------------------------------------
def tableau_cluster(t: HNTableau) -> tuple[Cluster, tuple]:
    pts = chain_points(t)
    n = defect_prefix(pts)
    cluster = Cluster(tuple(ClusterPoint(i, parent, frozenset(prox), 1)
                            for i, (_, parent, prox) in enumerate(pts[:n])))
    return cluster, tuple(m for m, _, _ in pts[:n])


def resolution_cluster(b: Branch) -> tuple[Cluster, tuple]:
    """Cluster of the minimal embedded resolution (all degrees 1) and the multiplicities."""
    cluster, m = tableau_cluster(hn_tableau(b))
    P, Q = proximity_matrix(cluster), inverse_proximity(cluster)
    last = [0] * len(m)
    last[-1] = 1
    pm = [sum(P[u, s] * m[u] for u in range(len(m))) for s in range(len(m))]
    assert pm == last, "proximity equalities fail on the resolution cluster"
    assert tuple(Q.rows[-1]) == m
    return cluster, m


def walk_cluster(b: Branch) -> tuple[Cluster, tuple]:
    """The same cluster read off the series blow-up walk instead of the tableau."""
    steps = walk_resolution(b)
    cluster = Cluster(tuple(ClusterPoint(st.index, st.parent, st.prox, 1) for st in steps))
    return cluster, tuple(st.multiplicity for st in steps)


def last_point_curvettes(b: Branch, count: int = 2) -> list[Branch]:
    """Branches whose strict transforms are distinct curvettes at the last cluster point.

    With a single point any lines do.  Otherwise the tableau of ``b`` is
    resynthesized with different closing coefficients; the copies share all
    cluster points and split right after the last one.
    """
    t = hn_tableau(b)
    f = b.field
    cluster, _ = tableau_cluster(t)
    out: list[Branch] = []
    seen = set()
    for k in f.elements():
        if k == 0:
            continue
        if len(cluster) == 1:
            cand = make_branch(UniPoly(f, [0, 1]), UniPoly(f, [0, k]), f)
            key = k
        else:
            cand = synthesize_branch(t, last_coefficient=k)
            key = expansion(cand).column(len(t)).a
        if key in seen:
            continue
        seen.add(key)
        out.append(cand)
        if len(out) == count:
            return out
    raise ValueError("field too small for distinct curvettes")


def curvette_bridge(b: Branch) -> tuple[int, int]:
    """``(M_LL, intersection of two curvettes at L)``; equal when the theory holds."""
    cluster, _ = resolution_cluster(b)
    M = curvette_gram(cluster)
    g1, g2 = last_point_curvettes(b)
    return M.rows[-1][-1], noether_intersection(g1, g2)
