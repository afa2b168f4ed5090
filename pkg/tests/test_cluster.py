"""Cluster validation, proximity-derived matrices and cluster files."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchlab.cluster import (
    FREE,
    ROOT,
    SATELLITE,
    ExactMatrix,
    all_matrices,
    classify_point,
    cluster_validate,
    curvette_gram,
    degree_matrix,
    format_cluster_text,
    intersection_entries_direct,
    intersection_matrix,
    inverse_proximity,
    make_cluster,
    parse_cluster_text,
    proximity_matrix,
    refined_proximity,
    total_proximity,
)
from branchlab.errors import InputError
from branchlab.generators import random_cluster

ROOT_ONLY = make_cluster([(None, [])])
CHAIN = make_cluster([(None, []), (0, [0])])
CHAIN_DEG2 = make_cluster([(None, []), (0, [0], 2)])
CUSP = make_cluster([(None, []), (0, [0]), (1, [1, 0])])


def L(m):
    return m.to_lists()


def test_validate_examples():
    assert cluster_validate(ROOT_ONLY) == []
    assert cluster_validate(CUSP) == []
    bad = make_cluster([(None, []), (0, [0]), (1, [1]), (2, [2, 0])])
    assert [v.code for v in cluster_validate(bad)] == ["inherit"]


def test_validate_structure_rules():
    codes = lambda spec: {v.code for v in cluster_validate(make_cluster(spec))}
    assert "parent-prox" in codes([(None, []), (0, [])])
    assert "root" in codes([(None, [], 2)])
    assert "order" in codes([(None, []), (1, [1])])
    assert "sat-degree" in codes([(None, []), (0, [0], 2), (1, [1, 0], 1)])
    twins = [(None, []), (0, [0]), (1, [1, 0]), (1, [1, 0])]
    assert "twin" in codes(twins)


def test_proximity_examples():
    assert L(proximity_matrix(ROOT_ONLY)) == [[1]]
    assert L(proximity_matrix(CHAIN)) == [[1, 0], [-1, 1]]
    assert L(proximity_matrix(CUSP)) == [[1, 0, 0], [-1, 1, 0], [-1, -1, 1]]


def test_degree_derived_matrices():
    assert L(total_proximity(CHAIN_DEG2)) == [[1, 0], [-2, 2]]
    assert L(refined_proximity(CHAIN_DEG2)) == [[1, 0], [-2, 1]]
    assert total_proximity(CUSP) == proximity_matrix(CUSP)
    D, P = degree_matrix(CHAIN_DEG2), proximity_matrix(CHAIN_DEG2)
    assert total_proximity(CHAIN_DEG2) == D @ P
    assert refined_proximity(CHAIN_DEG2) == D @ P @ D.inverse()


def test_intersection_examples():
    assert L(intersection_matrix(ROOT_ONLY)) == [[-1]]
    assert L(intersection_matrix(CHAIN)) == [[-2, 1], [1, -1]]
    assert L(intersection_matrix(CUSP)) == [[-3, 0, 1], [0, -2, 1], [1, 1, -1]]
    assert intersection_entries_direct(CUSP) == intersection_matrix(CUSP)


def test_direct_entries_free_chain():
    free = make_cluster([(None, []), (0, [0]), (1, [1])])
    n = intersection_entries_direct(free)
    assert n[0, 1] == 1 and n[0, 2] == 0
    assert n == intersection_matrix(free)


def test_direct_entry_uses_degree_of_proximate_point():
    c = make_cluster([(None, []), (0, [0], 3)])
    assert intersection_entries_direct(c)[0, 1] == 3
    assert intersection_matrix(c)[0, 1] == 3


def test_inverse_examples():
    assert L(inverse_proximity(CHAIN)) == [[1, 0], [1, 1]]
    assert L(inverse_proximity(CUSP)) == [[1, 0, 0], [1, 1, 0], [2, 1, 1]]
    assert L(inverse_proximity(ROOT_ONLY)) == [[1]]


def test_gram_examples():
    assert L(curvette_gram(CHAIN)) == [[1, 1], [1, 2]]
    assert L(curvette_gram(CUSP)) == [[1, 1, 2], [1, 2, 3], [2, 3, 6]]
    assert L(curvette_gram(ROOT_ONLY)) == [[1]]


def test_gram_with_degrees_is_rational():
    M = curvette_gram(CHAIN_DEG2)
    assert M[1, 1] == Fraction(3, 2)


def test_classify():
    assert classify_point(CUSP, 0) == ROOT
    assert classify_point(CUSP, 1) == FREE
    assert classify_point(CUSP, 2) == SATELLITE


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 12))
def test_matrix_laws_on_random_clusters(seed, size):
    c = random_cluster(random.Random(seed), size)
    assert cluster_validate(c) == []
    P, Q = proximity_matrix(c), inverse_proximity(c)
    n = len(c)
    assert P @ Q == ExactMatrix.identity(n)
    N = intersection_matrix(c)
    assert N.is_symmetric() and all(N[i, i] < 0 for i in range(n))
    assert N == intersection_entries_direct(c)
    # each row of Q satisfies the proximity equalities with unit defect at its own point
    for t in range(n):
        col = [Q[t, u] for u in range(n)]
        assert [sum(P[u, s] * col[u] for u in range(n)) for s in range(n)] == \
            [int(s == t) for s in range(n)]


def test_exact_matrix_algebra():
    A = ExactMatrix([[2, 1], [1, 1]])
    assert A @ A.inverse() == ExactMatrix.identity(2)
    assert A.det() == 1
    assert ExactMatrix([[1, 2], [2, 4]]).det() == 0
    with pytest.raises(ZeroDivisionError):
        ExactMatrix([[1, 2], [2, 4]]).inverse()
    assert A.compact() == "[[2,1],[1,1]]"


def test_cluster_file_round_trip():
    text = "# cusp\npoint 0: parent=none, prox=[], deg=1\npoint 1: parent=0, prox=[0], deg=1\n" \
           "point 2: parent=1, prox=[1, 0], deg=1\n"
    c = parse_cluster_text(text)
    assert c == CUSP
    assert parse_cluster_text(format_cluster_text(c)) == c


def test_cluster_file_errors():
    with pytest.raises(InputError) as err:
        parse_cluster_text("point 0: parent=none, prox=[], deg=1\npoint 1 parent=0\n")
    assert err.value.line == 2
    with pytest.raises(InputError) as err:
        parse_cluster_text("point 0: parent=none, prox=[], deg=1\npoint 2: parent=0, prox=[0], deg=1\n")
    assert err.value.line == 2
    with pytest.raises(InputError):
        parse_cluster_text("point 0: parent=none, prox=[], deg=1\npoint 1: parent=0, prox=[], deg=1\n")


def test_all_matrices_bundle_agrees():
    bundle = all_matrices(CUSP)
    assert bundle.agree and bundle.M == -bundle.N.inverse()
