import random
from itertools import combinations

import pytest

from ktrivial import _matrix as mx
from ktrivial.lattice import P3_8, LatticeError, anticanonical_degree
from ktrivial.surface import (
    E,
    SurfaceClass,
    SurfaceSizeError,
    canonical_surface_class,
    enumerate_minus2,
    f,
    kperp_basis,
    kperp_semidefiniteness,
    pushforward,
    surface_pair,
)
from oracles import brute_minus2_surface, rational_rank

K = canonical_surface_class()


def test_pair_examples():
    assert surface_pair(K, K) == 0
    assert surface_pair(f(1), f(2)) == 1
    assert surface_pair(f(1), f(1)) == 0
    c = f(2) - E(1) - E(2)
    assert surface_pair(c, c) == -2 and surface_pair(c, K) == 0


def test_length_enforced():
    with pytest.raises(LatticeError):
        SurfaceClass((1, 2, 3))


def test_kperp_basis_is_saturated():
    basis = kperp_basis()
    assert all(surface_pair(b, K) == 0 for b in basis)
    # index 1 in Z^10: some 9x9 minor of the basis is +-1
    rows = [b.coeffs for b in basis]
    from ktrivial.spectral import determinant

    minors = [determinant(tuple(tuple(r[j] for j in cols) for r in rows)) for cols in combinations(range(10), 9)]
    from math import gcd

    assert gcd(*minors) == 1


def test_semidefiniteness_certificate():
    cert = kperp_semidefiniteness()
    assert cert.rank == 8 == rational_rank(cert.gram)
    assert cert.negative_semidefinite
    assert cert.canonical_in_kernel and cert.kernel_is_canonical_line
    assert cert.holds
    # Gram value on the image of K_S
    k = cert.canonical_coords
    assert mx.dot(k, mx.matvec(cert.gram, k)) == 0


def test_semidefiniteness_sampled():
    rng = random.Random(2)
    basis = kperp_basis()
    for _ in range(300):
        w = [rng.randint(-9, 9) for _ in basis]
        c = SurfaceClass((0,) * 10)
        for coef, b in zip(w, basis):
            c = c + coef * b
        v = surface_pair(c, c)
        assert v <= 0
        if v == 0:
            g = [x for x in c.coeffs if x]
            assert not g or c == (c.coeffs[0] // K.coeffs[0]) * K


def test_enumerate_bound_1_matches_brute_force():
    classes = enumerate_minus2(1)
    assert [c.coeffs for c in classes] == brute_minus2_surface(1)
    assert len(classes) == 310
    have = {c.coeffs for c in classes}
    assert (f(2) - E(1) - E(2)).coeffs in have
    for i, j in combinations(range(1, 9), 2):
        assert (E(i) - E(j)).coeffs in have and (E(j) - E(i)).coeffs in have
        for a in (1, 2):
            assert (f(a) - E(i) - E(j)).coeffs in have
    assert all(c.coeffs[:2] != (0, 0) or any(c.coeffs) for c in classes)
    assert K.coeffs not in have and (-K).coeffs not in have


def test_enumerate_output_symmetries():
    classes = enumerate_minus2(2)
    have = {c.coeffs for c in classes}
    assert all(surface_pair(c, c) == -2 and surface_pair(c, K) == 0 for c in classes)
    assert all(max(abs(x) for x in c.coeffs) <= 2 for c in classes)
    rng = random.Random(7)
    for c in classes:
        assert (c.coeffs[1], c.coeffs[0]) + c.coeffs[2:] in have
        d = list(c.coeffs[2:])
        rng.shuffle(d)
        assert c.coeffs[:2] + tuple(d) in have


def test_enumerate_errors():
    with pytest.raises(ValueError):
        enumerate_minus2(0)
    with pytest.raises(SurfaceSizeError):
        enumerate_minus2(1, size_cap=5)


def test_pushforward_examples():
    assert pushforward(f(2) - E(1) - E(2)) == P3_8.line_through(1, 2)
    assert pushforward(f(1) + f(2)).coeffs == (2,) + (0,) * 8


def test_pushforward_adjunction_random():
    rng = random.Random(0)
    for _ in range(100):
        c = SurfaceClass(tuple(rng.randint(-20, 20) for _ in range(10)))
        assert anticanonical_degree(pushforward(c)) == 2 * (-surface_pair(K, c))


def test_pushforward_of_minus2_is_k_trivial():
    for c in enumerate_minus2(2):
        assert anticanonical_degree(pushforward(c)) == 0
