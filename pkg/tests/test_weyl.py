import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktrivial import _matrix as mx
from ktrivial.cremona import coxeter_step, family_start, iterate_family
from ktrivial.lattice import P3_8, anticanonical_degree, canonical_class, degree
from ktrivial.spectral import rank
from ktrivial.weyl import (
    MembershipIndeterminate,
    OrbitSizeError,
    RootError,
    coroot,
    coxeter_charpoly_check,
    coxeter_comparison,
    coxeter_element,
    curve_form,
    descend,
    dual_reflect,
    dual_reflection_matrix,
    orbit_enumerate,
    orbit_membership,
    q,
    reflect,
    reflection_matrix,
    root_system,
    simple_roots,
)
from oracles import diophantine_candidates_fast, diophantine_orbit_candidates, lines_and_cubics, transfer_to_curves

ROOTS = simple_roots(P3_8)
RS = root_system(P3_8)
START = family_start(P3_8)
vec = st.lists(st.integers(-200, 200), min_size=9, max_size=9)


def test_simple_roots_values():
    a0 = ROOTS[0]
    assert a0.coeffs == (1, -1, -1, -1, -1, 0, 0, 0, 0)
    assert q(a0) == -2
    assert q(a0, ROOTS[4]) == 1 and q(a0, ROOTS[1]) == 0
    k = canonical_class(P3_8)
    assert all(q(r) == -2 and q(r, k) == 0 for r in ROOTS)


def test_roots_span_kperp():
    # q-orthogonal complement of K has rank 8, so 8 independent roots is the maximum
    k = canonical_class(P3_8)
    functional = (2 * k.coeffs[0],) + tuple(-b for b in k.coeffs[1:])
    assert rank((functional,)) == 1  # complement has rank 9 - 1
    assert len(ROOTS) == 8
    assert rank(tuple(r.coeffs for r in ROOTS)) == 8


def test_diagram_is_t244():
    assert RS.is_tree()
    assert RS.arm_lengths() == (2, 4, 4)
    assert RS.edges() == [(0, 4), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]


def test_reflect_examples():
    a = ROOTS[0]
    assert reflect(a, a) == -a
    x = P3_8.divisor((2, -1, -1, -1, -1, 5, 0, 0, 7))
    assert q(x, a) == 0 and reflect(a, x) == x
    assert reflect(a, P3_8.H()).coeffs == (3, -2, -2, -2, -2, 0, 0, 0, 0)
    with pytest.raises(RootError):
        reflect(P3_8.H(), a)


@given(vec, vec)
def test_reflections_are_isometric_involutions(x, y):
    X, Y = P3_8.divisor(x), P3_8.divisor(y)
    for a in ROOTS:
        assert q(reflect(a, X), reflect(a, Y)) == q(X, Y)
        assert reflect(a, reflect(a, X)) == X


def test_dual_reflect_examples():
    a0 = ROOTS[0]
    c = dual_reflect(a0, P3_8.line_through(1, 2))
    assert c.coeffs == (-1, 0, 0, 1, 1, 0, 0, 0, 0)
    assert anticanonical_degree(c) == 0
    for a in ROOTS[1:]:
        assert dual_reflect(a, P3_8.h()) == P3_8.h()
    assert coroot(a0).coeffs == (2, -1, -1, -1, -1, 0, 0, 0, 0)


def test_dual_reflection_matches_transfer_formula():
    for a in ROOTS:
        assert dual_reflection_matrix(a) == transfer_to_curves(reflection_matrix(a))


@given(vec)
def test_dual_reflect_preserves_invariants(v):
    c = P3_8.curve(v)
    for a in ROOTS:
        d = dual_reflect(a, c)
        assert anticanonical_degree(d) == anticanonical_degree(c)
        assert curve_form(d) == curve_form(c)
        assert dual_reflect(a, d) == c


def test_curve_form_values():
    assert curve_form(P3_8.line_through(3, 5)) == -3
    assert curve_form(P3_8.curve((4,) + (-1,) * 8)) == 0


def test_orbit_bound_1_is_28_lines():
    orbit = orbit_enumerate(START, 1)
    assert [c.coeffs for c in orbit] == diophantine_orbit_candidates(1)
    assert len(orbit) == 28


def test_orbit_bound_3_contains_cubics():
    orbit = {c.coeffs for c in orbit_enumerate(START, 3)}
    lines, cubics = lines_and_cubics()
    assert set(cubics) <= orbit and set(lines) <= orbit


@pytest.mark.parametrize("bound", [1, 3, 5, 7])
def test_orbit_matches_diophantine_oracle(bound):
    orbit = [c.coeffs for c in orbit_enumerate(START, bound)]
    oracle = sorted(
        v
        for c in range(1, bound + 1)
        for v in diophantine_candidates_fast(c)
        if orbit_membership(P3_8.curve(v))
    )
    assert orbit == oracle


def test_orbit_insensitive_to_extra_slack():
    assert orbit_enumerate(START, 5, slack=0) == orbit_enumerate(START, 5) == orbit_enumerate(START, 5, slack=30)


def test_orbit_invariants_and_symmetry():
    orbit = orbit_enumerate(START, 7)
    coeffs = {c.coeffs for c in orbit}
    assert [c.coeffs for c in orbit] == sorted(coeffs)
    for c in orbit:
        assert anticanonical_degree(c) == 0 and curve_form(c) == -3
        for a in ROOTS[1:]:
            assert dual_reflect(a, c).coeffs in coeffs


def test_family_inside_orbit():
    orbit = {c.coeffs for c in orbit_enumerate(START, 9)}
    for c in iterate_family(P3_8, START, 30):
        if degree(c) <= 9:
            assert c.coeffs in orbit


def test_orbit_is_deterministic_across_workers():
    assert orbit_enumerate(START, 5, threads=1) == orbit_enumerate(START, 5, threads=2)


def test_orbit_size_cap():
    with pytest.raises(OrbitSizeError):
        orbit_enumerate(START, 5, size_cap=10)


def test_orbit_requires_k_trivial_start():
    with pytest.raises(ValueError):
        orbit_enumerate(P3_8.h(), 3)


def test_membership_examples():
    c1 = coxeter_step(P3_8).apply_curve(START)
    assert c1.coeffs == (3, -1, -1, -1, 0, 0, -1, -1, -1)
    assert c1.coeffs in {c.coeffs for c in orbit_enumerate(START, 3)}
    assert orbit_membership(c1)
    assert not orbit_membership(P3_8.curve((4,) + (-1,) * 8))
    assert orbit_membership(P3_8.line_through(1, 2))
    assert orbit_membership(-P3_8.line_through(1, 2))
    assert not orbit_membership(P3_8.h())


def test_membership_deep_family_member():
    c = iterate_family(P3_8, START, 150)[-1]
    assert orbit_membership(c)
    assert descend(c).coeffs[0] == 1


def test_membership_iteration_cap():
    c = iterate_family(P3_8, START, 40)[-1]
    with pytest.raises(MembershipIndeterminate):
        orbit_membership(c, max_steps=3)


def test_coxeter_check():
    step = coxeter_step(P3_8)
    cmp = coxeter_comparison(step, RS)
    assert coxeter_charpoly_check(step, RS)
    # frozen from sympy: (t-1)^2 (t+1)^2 (t^2+1) (t^2+t+1)
    assert cmp.step_poly.coeffs == (1, 1, 0, -1, -2, -1, 0, 1, 1)
    rev = coxeter_comparison(step, RS, order=reversed(range(8)))
    assert rev.coxeter_poly == cmp.coxeter_poly
    assert cmp.step_poly(1) == 0


def test_coxeter_element_fixes_canonical():
    c = coxeter_element(RS)
    k = canonical_class(P3_8).coeffs
    assert mx.matvec(c, k) == k
