import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import points_in
from digitalfp.core import CU, DigitalImage, box, interval
from digitalfp.errors import InputError
from digitalfp.metric import (LP, DigitalMetricSpace, PointSequence, TableMetric, adjacency_gap_stats,
                              as_fraction, cauchy_modulus, compare, diameter, distance, even_odd_gaps,
                              is_eventually_constant, min_gap, mod4_sequence, sign, to_json_number)

TRI = DigitalImage([(0, 0, 0), (1, 1, 1), (2, 0, 0)], CU(3, 3))


def space(img, p=1):
    return DigitalMetricSpace(img, LP(p))


def test_distances():
    s = space(TRI)
    assert distance(s, (0, 0, 0), (1, 1, 1)) == 3
    assert distance(s, (0, 0, 0), (2, 0, 0)) == 2
    assert LP(math.inf)((0, 0), (2, 3)) == 3
    assert LP(2)((0, 0), (3, 4)) == 5
    assert LP(2)((0, 0), (1, 1)) == sympy.sqrt(2)
    with pytest.raises(InputError):
        distance(s, (0, 0, 0), (9, 9, 9))


@pytest.mark.parametrize("p", [0, -1, 1.5, True, "2"])
def test_lp_rejects_bad_p(p):
    with pytest.raises(InputError):
        LP(p)


def test_gap_statistics():
    s = space(interval(0, 5))
    assert min_gap(s).value == 1 and diameter(s).value == 5
    t = space(TRI)
    assert min_gap(t) == (2, ((0, 0, 0), (2, 0, 0)))
    assert diameter(t).value == 3
    assert [a.value for a in adjacency_gap_stats(space(interval(0, 3)))] == [1, 1]
    assert [a.value for a in adjacency_gap_stats(space(box([2, 2], 2)))] == [1, 2]
    # both adjacent pairs of the three-point image sit at l1 distance 3
    assert [a.value for a in adjacency_gap_stats(t)] == [3, 3]
    with pytest.raises(InputError):
        min_gap(space(DigitalImage([(0,)], CU(1, 1))))
    with pytest.raises(InputError):
        adjacency_gap_stats(space(DigitalImage([(0,), (5,)], CU(1, 1))))


def test_table_metric_axioms():
    pts = [(0,), (1,), (2,)]
    img = DigitalImage(pts, CU(1, 1))
    ok = TableMetric.from_rows(pts, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert DigitalMetricSpace(img, ok).d((0,), (2,)) == 2
    bad = [
        [[0, 1, 3], [1, 0, 1], [3, 1, 0]],   # triangle
        [[0, 1, 2], [2, 0, 1], [2, 1, 0]],   # symmetry
        [[0, 0, 2], [0, 0, 1], [2, 1, 0]],   # indiscernibles
        [[1, 1, 2], [1, 0, 1], [2, 1, 0]],   # diagonal
        [[0, -1, 2], [-1, 0, 1], [2, 1, 0]],
        [[0, 1], [1, 0]],
    ]
    for rows in bad:
        with pytest.raises(InputError):
            TableMetric.from_rows(pts, rows)
    with pytest.raises(InputError):
        DigitalMetricSpace(DigitalImage([(0,), (1,)], CU(1, 1)), ok)


def test_exact_number_helpers():
    assert as_fraction("3/4") == Fraction(3, 4)
    for bad in (0.5, True, "x"):
        with pytest.raises(InputError):
            as_fraction(bad)
    assert sign(sympy.sqrt(2) - Fraction(141421, 100000)) == 1
    assert sign(sympy.sqrt(8) - 2 * sympy.sqrt(2)) == 0
    assert compare(sympy.root(3, 3), Fraction(3, 2)) < 0
    assert to_json_number(Fraction(6, 3)) == 2 and to_json_number(Fraction(1, 3)) == "1/3"


def test_eventual_constancy_examples():
    v = is_eventually_constant(PointSequence(((1,), (2,), (3,), (3,), (3,), (3,))))
    assert v and v.witness == 2
    v = is_eventually_constant(PointSequence(((4,),) * 5))
    assert v and v.witness == 0
    for n in range(4, 40):
        assert not is_eventually_constant(mod4_sequence(n))
    with pytest.raises(InputError):
        is_eventually_constant(PointSequence(()))


def test_mod4_cauchy_report():
    seq = mod4_sequence(64)
    s = space(interval(0, 1))
    assert all(g == 0 for g in even_odd_gaps(seq, s))
    rep = cauchy_modulus(seq, s, Fraction(1))
    assert not rep.cauchy
    assert set(rep.tail_sups) == {1}
    assert not rep.eventually_constant
    assert rep.proposition_holds


def test_constant_tail_is_cauchy_at_every_threshold():
    seq = PointSequence(((0,), (1,), (2,), (2,), (2,), (2,), (2,)))
    s = space(interval(0, 2))
    for thr in ("1/100", 1, 5):
        rep = cauchy_modulus(seq, s, as_fraction(thr))
        assert rep.cauchy and rep.eventually_constant and rep.proposition_holds
    with pytest.raises(InputError):
        cauchy_modulus(seq, s, Fraction(0))


# -- properties -----------------------------------------------------------------

metric_kind = st.sampled_from([1, 2, 3, math.inf])


@given(st.integers(1, 3).flatmap(lambda d: points_in(d, min_size=3, max_size=5)), metric_kind)
def test_metric_axioms(pts, p):
    m = LP(p)
    for x, y, z in itertools.product(pts, repeat=3):
        assert sign(m(x, y)) >= 0
        assert (sign(m(x, y)) == 0) == (x == y)
        assert compare(m(x, y), m(y, x)) == 0
        assert compare(m(x, z), m(x, y) + m(y, z)) <= 0


@given(st.integers(1, 3).flatmap(lambda d: points_in(d, min_size=2, max_size=5)))
def test_lp_monotone_in_p(pts):
    for x, y in itertools.combinations(pts, 2):
        assert LP(1)(x, y) == oracle.l1(x, y) and LP(math.inf)(x, y) == oracle.linf(x, y)
        chain = [LP(1)(x, y), LP(2)(x, y), LP(3)(x, y), LP(math.inf)(x, y)]
        assert all(compare(a, b) >= 0 for a, b in zip(chain, chain[1:]))


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(points_in(d, min_size=2, max_size=6),
                                                     st.integers(1, d))), metric_kind)
def test_gap_chain(args, p):
    pts, u = args
    img = DigitalImage(pts, CU(u, len(pts[0])))
    s = space(img, p)
    if not img.edges():
        return
    d0, d1 = adjacency_gap_stats(s)
    chain = [min_gap(s).value, d0.value, d1.value, diameter(s).value]
    assert all(compare(a, b) <= 0 for a, b in zip(chain, chain[1:]))


@given(st.lists(st.integers(0, 3), min_size=1, max_size=20), st.sampled_from([1, "1/2", 2, 3]))
def test_small_tails_force_constancy(vals, thr):
    """Tail distances below the min gap mean the tail is constant."""
    seq = PointSequence(tuple((v,) for v in vals))
    s = space(DigitalImage([(v,) for v in range(4)], CU(1, 1)))
    rep = cauchy_modulus(seq, s, as_fraction(thr))
    assert rep.proposition_holds
    if rep.cauchy and compare(rep.min_gap, rep.threshold) >= 0:
        n = rep.cauchy.witness
        assert len(set(seq.terms[n:])) == 1
