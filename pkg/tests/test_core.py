import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import points_in, small_images
from digitalfp.core import (CU, NPU, DigitalImage, Explicit, Verdict, adjacent, adjacent_or_equal,
                            as_point, box, component_count, interval, is_connected,
                            is_connected_subset, is_dominating, neighbors)
from digitalfp.errors import InputError


@pytest.mark.parametrize("a,b,u,expected", [
    ((0, 0), (1, 0), 1, True),
    ((0, 0), (1, 1), 1, False),
    ((0, 0), (1, 1), 2, True),
    ((0, 0, 0), (1, 1, 1), 3, True),
    ((0, 0), (2, 0), 2, False),
    ((0, 0), (0, 0), 2, False),
])
def test_cu_adjacency(a, b, u, expected):
    assert adjacent(a, b, CU(u, len(a))) is expected


@pytest.mark.parametrize("a,b,expected", [((3,), (3,), True), ((3,), (4,), True), ((3,), (5,), False)])
def test_adjacent_or_equal(a, b, expected):
    assert adjacent_or_equal(a, b, CU(1, 1)) is expected


def test_dimension_mismatch_is_input_error():
    with pytest.raises(InputError):
        adjacent((0, 0), (1,), CU(1, 2))
    with pytest.raises(InputError):
        adjacent_or_equal((0,), (1, 1), CU(1, 1))


@pytest.mark.parametrize("u", [0, 3])
def test_cu_range_checked(u):
    with pytest.raises(InputError):
        CU(u, 2)


def test_explicit_rejects_self_loop():
    with pytest.raises(InputError):
        Explicit.from_pairs([((0,), (0,))], 1)


def test_as_point_rejects_non_integers():
    for bad in [(1.0, 2), (True,), "ab", ()]:
        with pytest.raises(InputError):
            as_point(bad)
    assert as_point([1, -2]) == (1, -2)


def test_image_construction_rules():
    img = DigitalImage([(2,), (0,), (1,)], CU(1, 1))
    assert img.points == ((0,), (1,), (2,))
    with pytest.raises(InputError):
        DigitalImage([], CU(1, 1))
    with pytest.raises(InputError):
        DigitalImage([(0,), (0,)], CU(1, 1))
    with pytest.raises(InputError):
        DigitalImage([(0,), (0, 1)], CU(1, 1))


def test_neighbors():
    I = interval(0, 2)
    assert neighbors((1,), I) == [(0,), (2,)]
    assert neighbors((0,), I) == [(1,)]
    sq = box([2, 2], 2)
    assert neighbors((0, 0), sq) == [(0, 1), (1, 0), (1, 1)]
    with pytest.raises(InputError):
        neighbors((5,), I)


def test_connectivity_examples():
    assert is_connected(interval(0, 3))
    assert not is_connected(DigitalImage([(0,), (2,)], CU(1, 1)))
    assert is_connected(DigitalImage([(0, 0), (1, 1), (2, 0)], CU(2, 2)))
    assert component_count(DigitalImage([(0,), (2,), (3,)], CU(1, 1))) == 2


def test_connected_subset():
    I = interval(0, 3)
    assert is_connected_subset(I, [0, 1])
    assert not is_connected_subset(I, [0, 2])


def test_dominating_examples():
    I = interval(0, 2)
    assert is_dominating(I.points, I)
    assert is_dominating([(1,)], I)
    assert not is_dominating([(0,)], I)
    with pytest.raises(InputError):
        is_dominating([(7,)], I)


def test_verdict_truthiness():
    assert Verdict(True)
    assert not Verdict(False, (0,))


def test_box_and_interval():
    assert len(box([3, 2], 1)) == 6
    assert len(box([2, 2], 1).edges()) == 4
    assert len(box([2, 2], 2).edges()) == 6
    with pytest.raises(InputError):
        interval(2, 1)


# -- properties ----------------------------------------------------------------

@given(small_images())
def test_adjacency_symmetric_and_irreflexive(img):
    rel = img.adjacency
    for a in img.points:
        assert not adjacent(a, a, rel)
        for b in img.points:
            assert adjacent(a, b, rel) == adjacent(b, a, rel)
            assert adjacent(a, b, rel) == oracle.adj(rel, a, b)


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(st.just(d), points_in(d, max_size=8))))
def test_cu_monotone_in_u(args):
    dim, pts = args
    for u in range(1, dim):
        for a in pts:
            for b in pts:
                if adjacent(a, b, CU(u, dim)):
                    assert adjacent(a, b, CU(u + 1, dim))


@given(small_images(max_size=8))
def test_connectivity_matches_transitive_closure(img):
    assert is_connected(img) == oracle.connected(img.points, img.adjacency)


def test_npu_single_factor_matches_factor():
    f = CU(1, 1)
    rel = NPU(1, (f,))
    for a in range(-2, 3):
        for b in range(-2, 3):
            assert adjacent((a,), (b,), rel) == adjacent((a,), (b,), f)
