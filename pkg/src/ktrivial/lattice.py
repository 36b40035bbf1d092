"""Divisor and curve class lattices of point blow-ups.

Supported ambient spaces are P^3 and P^1 x P^1 x P^1 blown up at r points
(threefolds), and a smooth quadric surface blown up at r points.

Bases are fixed and global:

* P3:       divisors (H, E_1..E_r), curves (h, e_1..e_r)
* P1cubed:  divisors (F_1, F_2, F_3, E_1..E_r), curves (l_1, l_2, l_3, e_1..e_r),
            where F_j is the pullback of a point of the j-th factor and l_j
            the class of a line in the j-th factor direction, so F_j . l_k = delta_jk
* QuadricSurface: (f_1, f_2, E_1..E_r); curves and divisors coincide

with E_i . e_j = -delta_ij.

Triple products on a threefold point blow-up: H^3 = 1 (or F_1 F_2 F_3 = 1),
E_i^3 = +1, and every mixed term vanishes. The sign of E_i^3 follows from
E_i ~ P^2 with normal bundle O(-1): E^3 = (E|_E)^2 = O(-1)^2 = 1. As a
cross-check, (-K)^3 = (4H - 2E)^3 = 64 - 8 E^3 must equal 56 on the
one-point blow-up of P^3, and (4H - 2 sum E_i)^3 = 64 - 8r vanishes at r = 8.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence


class LatticeError(ValueError):
    pass


class LatticeMismatchError(LatticeError):
    pass


class UnsupportedLatticeError(LatticeError):
    pass


class Ambient(str, enum.Enum):
    P3 = "P3"
    P1CUBED = "P1cubed"
    QUADRIC_SURFACE = "QuadricSurface"


_BASE_RANK = {Ambient.P3: 1, Ambient.P1CUBED: 3, Ambient.QUADRIC_SURFACE: 2}


@dataclass(frozen=True)
class BlowupLattice:
    ambient: Ambient
    num_points: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "ambient", Ambient(self.ambient))
        if self.num_points < 0:
            raise LatticeError("num_points must be nonnegative")

    @property
    def base_rank(self) -> int:
        return _BASE_RANK[self.ambient]

    @property
    def rank_div(self) -> int:
        return self.base_rank + self.num_points

    @property
    def rank_curve(self) -> int:
        return self.rank_div

    @property
    def is_threefold(self) -> bool:
        return self.ambient is not Ambient.QUADRIC_SURFACE

    def pairing_signs(self) -> tuple[int, ...]:
        """Diagonal of the pairing matrix J between the divisor and curve bases."""
        if not self.is_threefold:
            raise UnsupportedLatticeError("surface lattices use surface_pair")
        return (1,) * self.base_rank + (-1,) * self.num_points

    def _check_point(self, i: int) -> None:
        if not 1 <= i <= self.num_points:
            raise LatticeError(f"point index {i} out of range 1..{self.num_points}")

    # basis elements
    def divisor(self, coeffs: Iterable[int]) -> DivisorClass:
        return DivisorClass(self, tuple(coeffs))

    def curve(self, coeffs: Iterable[int]) -> CurveClass:
        return CurveClass(self, tuple(coeffs))

    def _unit(self, k: int) -> tuple[int, ...]:
        return tuple(1 if j == k else 0 for j in range(self.rank_div))

    def H(self) -> DivisorClass:
        if self.ambient is not Ambient.P3:
            raise UnsupportedLatticeError("H is the hyperplane class of P3")
        return self.divisor(self._unit(0))

    def h(self) -> CurveClass:
        if self.ambient is not Ambient.P3:
            raise UnsupportedLatticeError("h is the line class of P3")
        return self.curve(self._unit(0))

    def F(self, j: int) -> DivisorClass:
        if self.ambient is Ambient.P3 or not 1 <= j <= self.base_rank:
            raise UnsupportedLatticeError(f"no fiber class F_{j} on {self.ambient.value}")
        return self.divisor(self._unit(j - 1))

    def E(self, i: int) -> DivisorClass:
        self._check_point(i)
        return self.divisor(self._unit(self.base_rank + i - 1))

    def e(self, i: int) -> CurveClass:
        self._check_point(i)
        return self.curve(self._unit(self.base_rank + i - 1))

    def line_through(self, i: int, j: int) -> CurveClass:
        """h - e_i - e_j."""
        if i == j:
            raise LatticeError("line needs two distinct points")
        return self.h() - self.e(i) - self.e(j)

    def describe(self) -> dict:
        return {"ambient": self.ambient.value, "r": self.num_points}


P3_8 = BlowupLattice(Ambient.P3, 8)


class _Class:
    lattice: BlowupLattice
    coeffs: tuple[int, ...]

    def _check(self, expected: int) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != expected:
            raise LatticeError(
                f"{type(self).__name__} on {self.lattice.ambient.value}/r={self.lattice.num_points} "
                f"needs {expected} coefficients, got {len(self.coeffs)}"
            )

    def _same(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.lattice != self.lattice:
            raise LatticeMismatchError("classes live on different lattices")

    def __add__(self, other):
        self._same(other)
        return type(self)(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return type(self)(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return type(self)(self.lattice, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int):
        return type(self)(self.lattice, tuple(k * a for a in self.coeffs))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


@dataclass(frozen=True)
class DivisorClass(_Class):
    lattice: BlowupLattice
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        self._check(self.lattice.rank_div)


@dataclass(frozen=True)
class CurveClass(_Class):
    lattice: BlowupLattice
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        self._check(self.lattice.rank_curve)


def _require_threefold(lattice: BlowupLattice) -> None:
    if not lattice.is_threefold:
        raise UnsupportedLatticeError(
            "surface lattice: use ktrivial.surface.surface_pair for the fiber surface"
        )


def pair(d: DivisorClass, c: CurveClass) -> int:
    """Intersection number D . C."""
    if d.lattice != c.lattice:
        raise LatticeMismatchError("divisor and curve live on different lattices")
    _require_threefold(d.lattice)
    return sum(s * a * b for s, a, b in zip(d.lattice.pairing_signs(), d.coeffs, c.coeffs))


def canonical_class(lattice: BlowupLattice) -> DivisorClass:
    """K_X. P3: -4H + 2 sum E_i. P1cubed: -2(F_1+F_2+F_3) + 2 sum E_i."""
    _require_threefold(lattice)
    base = -4 if lattice.ambient is Ambient.P3 else -2
    return lattice.divisor((base,) * lattice.base_rank + (2,) * lattice.num_points)


def anticanonical_class(lattice: BlowupLattice) -> DivisorClass:
    return -canonical_class(lattice)


def anticanonical_degree(c: CurveClass) -> int:
    return pair(anticanonical_class(c.lattice), c)


def degree(c: CurveClass) -> int:
    """H . C on a blow-up of P3."""
    if c.lattice.ambient is not Ambient.P3:
        raise UnsupportedLatticeError("degree is defined on P3 blow-ups only")
    return c.coeffs[0]


def triple_self_intersection(d: DivisorClass) -> int:
    """D^3 for a divisor on a threefold point blow-up."""
    lat = d.lattice
    _require_threefold(lat)
    exc = sum(b ** 3 for b in d.coeffs[lat.base_rank:])
    if lat.ambient is Ambient.P3:
        return d.coeffs[0] ** 3 + exc
    a1, a2, a3 = d.coeffs[:3]
    return 6 * a1 * a2 * a3 + exc


def curve_from_json(lattice: BlowupLattice, data: Sequence[str]) -> CurveClass:
    return lattice.curve(int(x) for x in data)


def divisor_from_json(lattice: BlowupLattice, data: Sequence[str]) -> DivisorClass:
    return lattice.divisor(int(x) for x in data)
