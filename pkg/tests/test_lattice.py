from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktrivial.lattice import (
    P3_8,
    Ambient,
    BlowupLattice,
    LatticeError,
    LatticeMismatchError,
    UnsupportedLatticeError,
    anticanonical_class,
    anticanonical_degree,
    canonical_class,
    degree,
    pair,
    triple_self_intersection,
)
from oracles import expand_trilinear_p1cubed, expand_trilinear_p3

P1C6 = BlowupLattice(Ambient.P1CUBED, 6)
coeff = st.integers(min_value=-50, max_value=50)
vec9 = st.lists(coeff, min_size=9, max_size=9)


def test_ranks():
    assert BlowupLattice(Ambient.P3, 8).rank_div == 9
    assert BlowupLattice(Ambient.P1CUBED, 6).rank_div == 9
    assert BlowupLattice(Ambient.QUADRIC_SURFACE, 8).rank_div == 10
    assert BlowupLattice(Ambient.P3, 0).rank_curve == 1


def test_wrong_length_rejected():
    with pytest.raises(LatticeError):
        P3_8.curve((1, 2, 3))


def test_pair_examples():
    minus_k = anticanonical_class(P3_8)
    assert minus_k.coeffs == (4,) + (-2,) * 8
    assert pair(minus_k, P3_8.line_through(1, 2)) == 0
    assert pair(P3_8.H(), P3_8.h()) == 1
    assert pair(minus_k, P3_8.curve((4,) + (-1,) * 8)) == 0


def test_pairing_matrix_is_diag():
    for i in range(1, 9):
        assert pair(P3_8.H(), P3_8.e(i)) == 0
        assert pair(P3_8.E(i), P3_8.h()) == 0
        for j in range(1, 9):
            assert pair(P3_8.E(i), P3_8.e(j)) == (-1 if i == j else 0)


def test_pair_errors():
    other = BlowupLattice(Ambient.P3, 7)
    with pytest.raises(LatticeMismatchError):
        pair(other.H(), P3_8.h())
    surf = BlowupLattice(Ambient.QUADRIC_SURFACE, 8)
    with pytest.raises(UnsupportedLatticeError):
        pair(surf.divisor((0,) * 10), surf.curve((0,) * 10))
    with pytest.raises(UnsupportedLatticeError):
        canonical_class(surf)


def test_canonical_classes():
    assert canonical_class(P3_8).coeffs == (-4, 2, 2, 2, 2, 2, 2, 2, 2)
    assert canonical_class(BlowupLattice(Ambient.P3, 0)).coeffs == (-4,)
    assert canonical_class(P1C6).coeffs == (-2, -2, -2, 2, 2, 2, 2, 2, 2)


def test_anticanonical_degree_examples():
    assert anticanonical_degree(P3_8.curve((3,) + (-1,) * 6 + (0, 0))) == 0
    assert anticanonical_degree(P3_8.h()) == 4
    assert anticanonical_degree(P3_8.e(1)) == 2


def test_all_lines_and_cubics_are_k_trivial():
    for i, j in combinations(range(1, 9), 2):
        assert anticanonical_degree(P3_8.line_through(i, j)) == 0
    for s in combinations(range(1, 9), 6):
        c = P3_8.curve((3,) + tuple(-1 if k in s else 0 for k in range(1, 9)))
        assert anticanonical_degree(c) == 0


def test_degree():
    assert degree(P3_8.line_through(7, 8)) == 1
    assert degree(P3_8.curve((3,) + (-1,) * 6 + (0, 0))) == 3
    assert degree(P3_8.curve((4,) + (-1,) * 8)) == 4
    with pytest.raises(UnsupportedLatticeError):
        degree(P1C6.curve((1,) + (0,) * 8))


def test_triple_self_intersection_examples():
    assert triple_self_intersection(P3_8.divisor((4,) + (-2,) * 8)) == 0
    assert triple_self_intersection(P3_8.H()) == 1
    assert triple_self_intersection(P1C6.divisor((2, 2, 2) + (-2,) * 6)) == 0


@pytest.mark.parametrize("r", range(9))
def test_anticanonical_cube_by_number_of_points(r):
    lat = BlowupLattice(Ambient.P3, r)
    assert triple_self_intersection(anticanonical_class(lat)) == 64 - 8 * r


def test_one_point_blowup_cube_is_56():
    assert triple_self_intersection(anticanonical_class(BlowupLattice(Ambient.P3, 1))) == 56


@given(vec9, vec9, vec9)
def test_pair_is_bilinear(d1, d2, c):
    a, b, cc = P3_8.divisor(d1), P3_8.divisor(d2), P3_8.curve(c)
    assert pair(a + b, cc) == pair(a, cc) + pair(b, cc)
    assert pair(a, cc + P3_8.curve(d2)) == pair(a, cc) + pair(a, P3_8.curve(d2))


@given(vec9, st.integers(min_value=-7, max_value=7))
def test_cube_is_homogeneous(d, lam):
    D = P3_8.divisor(d)
    assert triple_self_intersection(lam * D) == lam ** 3 * triple_self_intersection(D)


@given(vec9)
def test_cube_matches_expanded_trilinear_form(d):
    assert triple_self_intersection(P3_8.divisor(d)) == expand_trilinear_p3(d[0], d[1:])
    assert triple_self_intersection(P1C6.divisor(d)) == expand_trilinear_p1cubed(d[:3], d[3:])


def test_p1cubed_pairing():
    F1 = P1C6.F(1)
    l = [P1C6.curve(tuple(int(k == j) for k in range(9))) for j in range(3)]
    assert [pair(F1, x) for x in l] == [1, 0, 0]
    assert pair(P1C6.E(2), P1C6.curve((0, 0, 0, 0, 1, 0, 0, 0, 0))) == -1


def test_json_roundtrip():
    from ktrivial.lattice import curve_from_json

    c = P3_8.curve((10 ** 30, -1, 0, 0, 0, 0, 0, 0, -(10 ** 30)))
    assert curve_from_json(P3_8, c.to_json()) == c
    assert all(isinstance(x, str) for x in c.to_json())
