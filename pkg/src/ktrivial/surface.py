"""Picard lattice of a smooth fiber: a quadric P^1 x P^1 blown up at 8 points.

Basis (f_1, f_2, E_1..E_8) with f_1 . f_2 = 1, f_i^2 = 0, E_i^2 = -1 and all
other products zero. K_S = -2 f_1 - 2 f_2 + sum E_i, so K_S^2 = 0.

Everything here is about classes. Whether a (-2)-class is represented by an
irreducible curve is a geometric question and is not decided.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import gcd
from typing import Iterable, Iterator

from . import _matrix as mx
from ._matrix import Matrix
from .lattice import P3_8, CurveClass, LatticeError
from .spectral import IntPolynomial, char_poly, rank

NUM_POINTS = 8
RANK = 2 + NUM_POINTS


class SurfaceSizeError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class SurfaceClass:
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != RANK:
            raise LatticeError(f"surface class needs {RANK} coefficients, got {len(self.coeffs)}")

    def __add__(self, other: SurfaceClass) -> SurfaceClass:
        return SurfaceClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: SurfaceClass) -> SurfaceClass:
        return SurfaceClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> SurfaceClass:
        return SurfaceClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> SurfaceClass:
        return SurfaceClass(tuple(k * a for a in self.coeffs))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def _unit(k: int) -> SurfaceClass:
    return SurfaceClass(tuple(int(i == k) for i in range(RANK)))


def f(i: int) -> SurfaceClass:
    if i not in (1, 2):
        raise LatticeError("rulings are f_1 and f_2")
    return _unit(i - 1)


def E(i: int) -> SurfaceClass:
    if not 1 <= i <= NUM_POINTS:
        raise LatticeError(f"point index {i} out of range")
    return _unit(1 + i)


def canonical_surface_class() -> SurfaceClass:
    return SurfaceClass((-2, -2) + (1,) * NUM_POINTS)


def gram_matrix() -> Matrix:
    m = [[0] * RANK for _ in range(RANK)]
    m[0][1] = m[1][0] = 1
    for i in range(2, RANK):
        m[i][i] = -1
    return mx.as_matrix(m)


def surface_pair(a: SurfaceClass, b: SurfaceClass) -> int:
    x, y = a.coeffs, b.coeffs
    return x[0] * y[1] + x[1] * y[0] - mx.dot(x[2:], y[2:])


def kperp_basis() -> list[SurfaceClass]:
    """Z-basis of K_S^perp: f_1 - f_2, f_1 - E_1 - E_2, E_i - E_{i+1}."""
    basis = [f(1) - f(2), f(1) - E(1) - E(2)]
    basis += [E(i) - E(i + 1) for i in range(1, NUM_POINTS)]
    return basis


@dataclass(frozen=True)
class SemidefinitenessCertificate:
    """Negative semidefiniteness of the form on K_S^perp, certified exactly.

    A real symmetric matrix has only real eigenvalues, so det(tI - G) has
    no positive root iff all its coefficients are >= 0. The kernel has rank
    ``dimension - rank``; K_S lies in it and is primitive, so when that rank
    is 1 the integral kernel is exactly Z K_S.
    """

    basis: tuple[SurfaceClass, ...]
    gram: Matrix
    char_poly: IntPolynomial
    rank: int
    canonical_coords: tuple[int, ...]
    canonical_primitive: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def negative_semidefinite(self) -> bool:
        return all(c >= 0 for c in self.char_poly.coeffs)

    @property
    def canonical_in_kernel(self) -> bool:
        return not any(mx.matvec(self.gram, self.canonical_coords))

    @property
    def kernel_is_canonical_line(self) -> bool:
        return self.dimension - self.rank == 1 and self.canonical_in_kernel and self.canonical_primitive

    @property
    def holds(self) -> bool:
        return self.negative_semidefinite and self.kernel_is_canonical_line

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "rank": self.rank,
            "char_poly": self.char_poly.to_json(),
            "negative_semidefinite": self.negative_semidefinite,
            "kernel_is_Z_K_S": self.kernel_is_canonical_line,
        }


def kperp_semidefiniteness() -> SemidefinitenessCertificate:
    basis = kperp_basis()
    k = canonical_surface_class()
    if any(surface_pair(b, k) for b in basis):
        raise AssertionError("basis element not orthogonal to K_S")
    gram = tuple(tuple(surface_pair(a, b) for b in basis) for a in basis)
    cols = mx.transpose(tuple(b.coeffs for b in basis))
    coords = mx.solve_columns(cols, mx.transpose((k.coeffs,)))
    if any(c[0].denominator != 1 for c in coords):
        raise AssertionError("K_S not in the integral span of the basis")
    k_coords = tuple(int(c[0]) for c in coords)
    primitive = gcd(*k.coeffs) == 1
    return SemidefinitenessCertificate(tuple(basis), gram, char_poly(gram), rank(gram), k_coords, primitive)


def _exceptional_parts(total: int, squares: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All d in [-bound, bound]^8 with sum d = total and sum d^2 = squares."""
    values = range(-bound, bound + 1)
    for combo in combinations_with_replacement(values, NUM_POINTS):
        if sum(combo) != total or sum(x * x for x in combo) != squares:
            continue
        yield from _distinct_permutations(combo)


def _distinct_permutations(items: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    counts: dict[int, int] = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)
    n = len(items)
    out: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(out) == n:
            yield tuple(out)
            return
        for key in keys:
            if counts[key]:
                counts[key] -= 1
                out.append(key)
                yield from rec()
                out.pop()
                counts[key] += 1

    yield from rec()


def enumerate_minus2(coeff_bound: int, size_cap: int = 10 ** 7) -> list[SurfaceClass]:
    """Classes with all |coefficients| <= coeff_bound, C^2 = -2 and K_S.C = 0."""
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    found = []
    for c1, c2 in product(range(-coeff_bound, coeff_bound + 1), repeat=2):
        # K_S.C = -2 c1 - 2 c2 - sum d = 0 and C^2 = 2 c1 c2 - sum d^2 = -2
        total = -2 * (c1 + c2)
        squares = 2 * c1 * c2 + 2
        if squares < 0 or abs(total) > NUM_POINTS * coeff_bound:
            continue
        for d in _exceptional_parts(total, squares, coeff_bound):
            found.append(SurfaceClass((c1, c2) + d))
            if len(found) > size_cap:
                raise SurfaceSizeError(f"more than {size_cap} (-2)-classes; raise --size-cap")
    return sorted(found)


def pushforward(c: SurfaceClass) -> CurveClass:
    """Image in N_1 of P^3 blown up at 8 points: each ruling is a line."""
    c1, c2 = c.coeffs[:2]
    return P3_8.curve((c1 + c2,) + c.coeffs[2:])


def surface_classes(rows: Iterable[Iterable[int]]) -> list[SurfaceClass]:
    return [SurfaceClass(tuple(r)) for r in rows]
