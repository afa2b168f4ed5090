"""Contact order, intersection numbers from three routes, approximations and clusters."""
import random

import pytest
import sympy

from branchlab.errors import IndexOutOfRange, OracleInapplicable, SameBranch
from branchlab.exact_algebra import GF, INF, QQ
from branchlab.generators import random_branch_pair, random_tableau
from branchlab.hn import hn_tableau, make_tableau, synthesize_branch
from branchlab.intersect import (
    approx_spec,
    approximation_branch,
    closed_form_iota,
    contact_order,
    curvette_bridge,
    curvette_check,
    intersect_all,
    intersection_number,
    intersection_of_branches,
    mu_approximation,
    noether_intersection,
    proportionality_conditions,
    resolution_cluster,
    resultant_applies,
    resultant_intersection,
    walk_cluster,
)
from branchlab.invariants import characteristic_data

from conftest import branch

# each value also checked by substituting into an implicit equation by hand
KNOWN = [
    (("t^2", "t^3"), ("t^3", "t^2"), 4),
    (("t^2", "t^3"), ("t", "t^2"), 3),
    (("t^4", "t^6 + t^7"), ("t^2", "t^3"), 13),
    (("t^2", "t^3"), ("t^2", "t^3 + t^4"), 7),
    (("t", "0"), ("0", "t"), 1),
    (("t^3", "t^4"), ("t^3", "t^5"), 12),
]


@pytest.mark.parametrize("p1,p2,expected", KNOWN)
def test_three_routes_on_known_pairs(p1, p2, expected):
    b1, b2 = branch(*p1), branch(*p2)
    report = intersect_all(b1, b2)
    assert report.values == {"tableau": expected, "resultant": expected, "noether": expected}
    assert intersection_of_branches(b2, b1) == expected


def test_contact_examples():
    t = lambda x, y: hn_tableau(branch(x, y))
    assert contact_order(t("t^2", "t^3"), t("t^2", "t^3 + t^4")).s == 1
    assert contact_order(t("t^2", "t^3"), t("t", "t^2")).s == 0
    assert contact_order(t("t^2", "t^3"), t("t^2", "t^3")).s == INF


def test_same_branch_detected():
    b = branch("t^2", "t^3")
    with pytest.raises(SameBranch):
        intersection_of_branches(b, b)
    with pytest.raises(SameBranch):
        noether_intersection(b, branch("t^2", "t^3"))
    assert resultant_intersection(b, b) == INF


def test_reparametrized_copy_is_same_branch():
    # t -> t + t^2 traces the same curve
    b = branch("t^2", "t^3")
    c = branch("t^2 + 2*t^3 + t^4", "t^3 + 3*t^4 + 3*t^5 + t^6")
    assert intersect_all(b, c).values["tableau"] == INF
    assert intersect_all(b, c).values["noether"] == INF


def test_resultant_precondition():
    assert resultant_applies(branch("t^2 + t^3", "t^3"))
    assert not resultant_applies(branch("t^2 - t^3", "t^3 - t^4"))
    bad = branch("t^2 - t^3", "t^3 - t^4")
    # swapped internally when only one branch qualifies
    assert resultant_intersection(bad, branch("t", "0")) == resultant_intersection(branch("t", "0"), bad)
    with pytest.raises(OracleInapplicable):
        resultant_intersection(bad, bad)


def test_resultant_route_against_sympy():
    s, t = sympy.symbols("s t")
    rng = random.Random(11)
    for _ in range(15):
        b1, b2 = random_branch_pair(rng, QQ, max_degree=5)
        x1 = sympy.sympify(str(b1.x).replace("^", "**")).subs(sympy.Symbol("t"), s)
        y1 = sympy.sympify(str(b1.y).replace("^", "**")).subs(sympy.Symbol("t"), s)
        x2 = sympy.sympify(str(b2.x).replace("^", "**"))
        y2 = sympy.sympify(str(b2.y).replace("^", "**"))
        res = sympy.resultant(x1 - x2, y1 - y2, s)
        ours = resultant_intersection(b1, b2)
        if res == 0:
            assert ours == INF
            continue
        poly = sympy.Poly(sympy.expand(res), t)
        low = min(m[0] for m in poly.monoms())
        assert ours == low


def test_random_pairs_agree_over_prime_field(rng):
    F = GF(101)
    for _ in range(25):
        b1, b2 = random_branch_pair(rng, F, max_degree=6)
        assert intersect_all(b1, b2).agree


def test_proportionality_equivalence_on_random_pairs(rng):
    for _ in range(40):
        b1, b2 = random_branch_pair(rng, QQ, max_degree=6)
        t1, t2 = hn_tableau(b1), hn_tableau(b2)
        s = contact_order(t1, t2).s
        if s == INF:
            continue
        c1, c2, c3, cons = proportionality_conditions(t1, t2, s)
        assert c1 == c2 == c3
        if c1:
            assert cons


def test_intersection_bounded_below_by_multiplicities(rng):
    # equality exactly when the tangent directions differ
    from branchlab.blowup import blowup_walk
    for _ in range(40):
        b1, b2 = random_branch_pair(rng, QQ, max_degree=6)
        w1, w2 = next(blowup_walk(b1)), next(blowup_walk(b2))
        v = intersect_all(b1, b2, ("tableau",)).tableau
        if v == INF:
            continue
        e = w1.multiplicity * w2.multiplicity
        assert v >= e
        assert (v == e) == (w1.direction != w2.direction)


def test_approximation_examples():
    f = branch("t^4", "t^6 + t^7")
    t = hn_tableau(f)
    assert approx_spec(t, 1).mu == 1 and approx_spec(t, 2).mu == 2
    assert mu_approximation(t, 1).triples == ((6, 1, INF),)
    assert mu_approximation(t, 2).triples == ((3, 2, 1), (1, 1, INF))
    assert str(approximation_branch(f, 1)).startswith("(t, t^6)")
    assert closed_form_iota(t, 1) == 6 and closed_form_iota(t, 2) == 13
    with pytest.raises(IndexOutOfRange):
        approx_spec(t, 3)
    with pytest.raises(IndexOutOfRange):
        approx_spec(t, 0)


def test_approximations_hit_semigroup_generators(rng):
    for _ in range(20):
        t = hn_tableau(synthesize_branch(random_tableau(rng, QQ, max_columns=4)))
        cd = characteristic_data(t)
        for j in range(1, cd.h + 1):
            spec = approx_spec(t, j)
            tg = hn_tableau(synthesize_branch(mu_approximation(t, spec)))
            assert contact_order(t, tg).s == spec.mu - 1
            assert intersection_number(t, tg) == cd.sg_seq[j] == closed_form_iota(t, spec.mu)


def test_curvette_check_examples():
    f = branch("t^4", "t^6 + t^7")
    assert curvette_check(f, branch("t", "t^6"), 1)
    assert curvette_check(f, branch("t^2", "t^3"), 2)
    assert not curvette_check(f, branch("0", "t"), 1)
    with pytest.raises(IndexOutOfRange):
        curvette_check(f, branch("t", "t^6"), 3)


@pytest.mark.parametrize("x,y,m,bridge", [
    ("t^2", "t^3", (2, 1, 1), 6),
    ("t^4", "t^6 + t^7", (4, 2, 2, 1, 1), 26),
    ("t", "t^2", (1,), 1),
    ("t^3", "t^5", (3, 2, 1, 1), 15),
])
def test_resolution_cluster_and_bridge(x, y, m, bridge):
    b = branch(x, y)
    cluster, mult = resolution_cluster(b)
    assert mult == m
    assert (cluster, mult) == walk_cluster(b)
    assert curvette_bridge(b) == (bridge, bridge)


def test_cusp_cluster_shape():
    cluster, _ = resolution_cluster(branch("t^2", "t^3"))
    assert [(p.parent, sorted(p.prox)) for p in cluster.points] == [(None, []), (0, [0]), (1, [0, 1])]


def test_tableau_and_walk_clusters_agree_on_random_branches(rng):
    for _ in range(30):
        b1, _ = random_branch_pair(rng, QQ, max_degree=6)
        assert resolution_cluster(b1) == walk_cluster(b1)
