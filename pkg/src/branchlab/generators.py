"""Seeded random branches, tableaux and clusters for the property suites."""
from __future__ import annotations

import random
from math import gcd

from .branch import Branch, make_branch
from .cluster import Cluster, ClusterPoint
from .errors import InvalidBranch
from .exact_algebra import INF, FieldSpec, UniPoly
from .hn import HNTableau, make_tableau
from .intersect import resultant_applies


def _coeff(rng: random.Random, field: FieldSpec):
    v = 0
    while v == 0:
        v = field(rng.randint(-5, 5))
    return v


def _sparse_poly(rng, field, low, high, density=0.5, lead=None):
    coeffs = [0] * (high + 1)
    coeffs[low] = lead if lead is not None else _coeff(rng, field)
    for e in range(low + 1, high + 1):
        if rng.random() < density:
            coeffs[e] = _coeff(rng, field)
    return UniPoly(field, coeffs)


def random_branch(rng: random.Random, field: FieldSpec, max_degree: int = 8,
                  resultant_ready: bool = True) -> Branch:
    """A primitive branch of degree at most ``max_degree``.

    Leading orders are drawn small so that singular branches are common;
    with ``resultant_ready`` the branch meets the origin only at ``t = 0``.
    """
    while True:
        kind = rng.random()
        if kind < 0.05:
            lin = UniPoly(field, [0, _coeff(rng, field)])
            x, y = (lin, UniPoly(field)) if rng.random() < 0.5 else (UniPoly(field), lin)
        else:
            ox = rng.randint(1, min(4, max_degree))
            oy = rng.randint(1, min(6, max_degree))
            x = _sparse_poly(rng, field, ox, rng.randint(ox, max_degree), 0.3)
            y = _sparse_poly(rng, field, oy, rng.randint(oy, max_degree), 0.4)
            if rng.random() < 0.5:
                x, y = y, x
        try:
            b = make_branch(x, y, field)
        except InvalidBranch:
            continue
        if resultant_ready and not resultant_applies(b):
            continue
        return b


def perturbed_partner(rng: random.Random, b: Branch, max_degree: int = 8) -> Branch | None:
    """A branch sharing a long initial stretch with ``b``: one coordinate changed in a high term."""
    f = b.field
    for _ in range(20):
        x, y = b.x, b.y
        k = rng.randint(1, max_degree)
        bump = UniPoly.monomial(f, k, _coeff(rng, f))
        if rng.random() < 0.5:
            y = y + bump
        else:
            x = x + bump
        try:
            g = make_branch(x, y, f)
        except InvalidBranch:
            continue
        if g != b and resultant_applies(g):
            return g
    return None


def random_branch_pair(rng: random.Random, field: FieldSpec, max_degree: int = 8):
    """Two distinct branches; about half the pairs are close perturbations of each other."""
    while True:
        b1 = random_branch(rng, field, max_degree)
        if rng.random() < 0.5:
            b2 = perturbed_partner(rng, b1, max_degree)
            if b2 is None:
                continue
        else:
            b2 = random_branch(rng, field, max_degree)
        if b1 == b2 or _same_axis(b1, b2):
            continue
        return b1, b2


def _same_axis(b1: Branch, b2: Branch) -> bool:
    return (b1.x.is_zero() and b2.x.is_zero()) or (b1.y.is_zero() and b2.y.is_zero())


def random_tableau(rng: random.Random, field: FieldSpec, max_columns: int = 3) -> HNTableau:
    """A valid finite tableau whose non-final columns all have ``gcd(c, p) > 1``."""
    while True:
        c = rng.randint(1, 6)
        triples = []
        ok = True
        while True:
            p = rng.randint(1, 9)
            g = gcd(c, p)
            if g == 1:
                triples.append((p, c, INF))
                break
            if len(triples) + 1 >= max_columns:
                ok = False
                break
            triples.append((p, c, _coeff(rng, field)))
            c = g
        if ok:
            return make_tableau(triples, field, terminated=True)


def random_cluster(rng: random.Random, size: int) -> Cluster:
    """Grow a valid cluster: random parent, optional satellite target inherited from it."""
    pts = [ClusterPoint(0, None, frozenset(), 1)]
    for i in range(1, size):
        parent = rng.randrange(i)
        prox = {parent}
        degree = rng.choice((1, 2, 3))
        if rng.random() < 0.5 and pts[parent].prox:
            used = {s for pt in pts if pt.parent == parent for s in pt.prox - {parent}}
            options = sorted(pts[parent].prox - used)
            if options:
                prox.add(rng.choice(options))
                degree = pts[parent].degree
        pts.append(ClusterPoint(i, parent, frozenset(prox), degree))
    return Cluster(tuple(pts))
