"""Characteristic indices and derived sequences."""
import random

import pytest

from branchlab.errors import InfiniteCharacteristicColumn
from branchlab.exact_algebra import INF, QQ
from branchlab.generators import random_tableau
from branchlab.hn import hn_tableau, make_tableau, synthesize_branch
from branchlab.invariants import (
    characteristic_data,
    characteristic_indices,
    chardata_problems,
    render_chardata,
)

from conftest import branch


def test_indices_examples():
    assert characteristic_indices(make_tableau([(3, 2, INF)], QQ)) == (1,)
    assert characteristic_indices(make_tableau([(6, 4, 1), (1, 2, INF)], QQ)) == (1, 2)
    assert characteristic_indices(make_tableau([(2, 1, INF)], QQ)) == (1,)


def test_data_examples():
    cd = characteristic_data(hn_tableau(branch("t^2", "t^3")))
    assert (cd.ch_seq, cd.div_seq, cd.n_seq, cd.sg_seq) == ((2, 3), (2, 1), (2,), (2, 3))
    cd = characteristic_data(hn_tableau(branch("t^4", "t^6 + t^7")))
    assert (cd.ch_seq, cd.div_seq, cd.n_seq, cd.sg_seq) == ((4, 6, 1), (4, 2, 1), (2, 2), (4, 6, 13))
    cd = characteristic_data(hn_tableau(branch("t", "t^2")))
    assert (cd.ch_seq, cd.div_seq, cd.n_seq, cd.sg_seq) == ((1, 2), (1, 1), (1,), (1, 2))


def test_non_characteristic_column_is_skipped():
    # c stays at 2 across the middle column
    t = make_tableau([(6, 4, 1), (2, 2, 3), (1, 2, INF)], QQ)
    assert characteristic_indices(t) == (1, 3)
    cd = characteristic_data(t)
    assert cd.q == (6, 3) and cd.sg_seq == (4, 6, 15)


@pytest.mark.parametrize("a,b", [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 7)])
def test_cusp_family(a, b):
    cd = characteristic_data(hn_tableau(branch(f"t^{a}", f"t^{b}")))
    assert cd.ch_seq == (a, b) and cd.sg_seq == (a, b)


def test_axis_has_no_characteristic_data():
    with pytest.raises(InfiniteCharacteristicColumn):
        characteristic_data(hn_tableau(branch("0", "t")))


def test_laws_on_random_tableaux():
    rng = random.Random(5)
    for _ in range(200):
        t = hn_tableau(synthesize_branch(random_tableau(rng, QQ, max_columns=4)))
        assert chardata_problems(characteristic_data(t)) == []


def test_semigroup_generators_are_branch_values():
    # r_2 = 13 is the value of y^2 - x^3 on (t^4, t^6 + t^7)
    from branchlab.branch import branch_valuation
    b = branch("t^4", "t^6 + t^7")
    r = characteristic_data(hn_tableau(b)).sg_seq
    assert r[0] == branch_valuation(b, {(1, 0): 1})
    assert r[1] == branch_valuation(b, {(0, 1): 1})
    assert r[2] == branch_valuation(b, {(0, 2): 1, (3, 0): -1})


def test_render():
    text = render_chardata(characteristic_data(hn_tableau(branch("t^4", "t^6 + t^7"))))
    assert "r: 4 6 13" in text and "Ch: (4; 6, 1)" in text
