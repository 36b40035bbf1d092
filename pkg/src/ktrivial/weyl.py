"""Root system in K^perp for P^3 blown up at 8 points, its Weyl group
action on divisor and curve classes, and orbit enumeration.

The Weyl-invariant form on divisors is q = diag(2, -1, ..., -1), i.e.
q(D, D') = 2 a a' - sum b_i b'_i for D = aH + sum b_i E_i. The transferred
form on curve classes, scaled to be integral, is q*(C) = c^2 - 2 sum d_i^2.

The simple roots are alpha_0 = H - E_1 - E_2 - E_3 - E_4 and
alpha_i = E_i - E_{i+1} (i = 1..7). They span K^perp, which has rank 8,
and their graph is the tree T_{2,4,4} (the affine E_7 diagram).
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import _matrix as mx
from ._matrix import Matrix
from .cremona import LatticeMap
from .lattice import (
    P3_8,
    Ambient,
    BlowupLattice,
    CurveClass,
    DivisorClass,
    LatticeError,
    UnsupportedLatticeError,
    anticanonical_degree,
    canonical_class,
    pair,
)
from .spectral import IntPolynomial, char_poly


class RootError(LatticeError):
    pass


class OrbitSizeError(RuntimeError):
    """The orbit grew past the configured size cap."""


class MembershipIndeterminate(RuntimeError):
    """Descent did not terminate within the iteration cap."""


def _require_p3_8(lattice: BlowupLattice) -> None:
    if lattice.ambient is not Ambient.P3 or lattice.num_points != 8:
        raise UnsupportedLatticeError("root system is implemented for P3 blown up at 8 points")


def gram_form(lattice: BlowupLattice) -> Matrix:
    _require_p3_8(lattice)
    return mx.diagonal((2,) + (-1,) * lattice.num_points)


def q(x: DivisorClass, y: DivisorClass | None = None) -> int:
    """Weyl-invariant bilinear form; q(x) is the quadratic value."""
    y = x if y is None else y
    return 2 * x.coeffs[0] * y.coeffs[0] - mx.dot(x.coeffs[1:], y.coeffs[1:])


def curve_form(c: CurveClass) -> int:
    """q*(C) = c^2 - 2 sum d_i^2, constant on Weyl orbits."""
    return c.coeffs[0] ** 2 - 2 * sum(d * d for d in c.coeffs[1:])


def simple_roots(lattice: BlowupLattice = P3_8) -> list[DivisorClass]:
    _require_p3_8(lattice)
    n = lattice.rank_div
    roots = [lattice.divisor((1, -1, -1, -1, -1) + (0,) * (n - 5))]
    for i in range(1, lattice.num_points):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        roots.append(lattice.divisor(v))
    return roots


@dataclass(frozen=True)
class RootSystem:
    lattice: BlowupLattice
    simple_roots: tuple[DivisorClass, ...]

    @property
    def gram_form(self) -> Matrix:
        return gram_form(self.lattice)

    def cartan_matrix(self) -> Matrix:
        """Matrix of q-values between simple roots."""
        return tuple(tuple(q(a, b) for b in self.simple_roots) for a in self.simple_roots)

    def edges(self) -> list[tuple[int, int]]:
        g = self.cartan_matrix()
        n = len(g)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if g[i][j] == 1]

    def is_tree(self) -> bool:
        n = len(self.simple_roots)
        e = self.edges()
        if len(e) != n - 1:
            return False
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in e:
            ri, rj = find(i), find(j)
            if ri == rj:
                return False
            parent[ri] = rj
        return True

    def arm_lengths(self) -> tuple[int, ...]:
        """Sorted arm lengths of a star-shaped tree, counting the center in each arm."""
        n = len(self.simple_roots)
        adj: dict[int, list[int]] = {i: [] for i in range(n)}
        for i, j in self.edges():
            adj[i].append(j)
            adj[j].append(i)
        centers = [v for v in adj if len(adj[v]) >= 3]
        if len(centers) != 1 or not self.is_tree():
            raise RootError("diagram is not a star-shaped tree")
        center = centers[0]
        arms = []
        for start in sorted(adj[center]):
            length, prev, cur = 2, center, start
            while True:
                nxt = [v for v in adj[cur] if v != prev]
                if not nxt:
                    break
                if len(nxt) > 1:
                    raise RootError("diagram has more than one branch point")
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        return tuple(sorted(arms))

    def basis_matrix(self) -> Matrix:
        """Columns are the simple roots in divisor coordinates."""
        return mx.transpose(tuple(r.coeffs for r in self.simple_roots))


def root_system(lattice: BlowupLattice = P3_8) -> RootSystem:
    return RootSystem(lattice, tuple(simple_roots(lattice)))


def _check_root(root: DivisorClass) -> None:
    _require_p3_8(root.lattice)
    if q(root) != -2:
        raise RootError(f"q(root) = {q(root)}, expected -2")


def reflect(root: DivisorClass, target: DivisorClass) -> DivisorClass:
    """Reflection in the q-orthogonal hyperplane of ``root``."""
    _check_root(root)
    return target + q(target, root) * root


def reflection_matrix(root: DivisorClass) -> Matrix:
    _check_root(root)
    n = root.lattice.rank_div
    cols = [reflect(root, root.lattice.divisor(tuple(int(i == k) for i in range(n)))).coeffs for k in range(n)]
    return mx.transpose(tuple(cols))


def coroot(root: DivisorClass) -> CurveClass:
    """Curve-side image J q root of a root; pair(root, coroot) = -2."""
    a = root.coeffs
    return root.lattice.curve((2 * a[0],) + tuple(a[1:]))


def dual_reflect(root: DivisorClass, target: CurveClass) -> CurveClass:
    """Curve-side reflection, adjoint to ``reflect`` under the intersection pairing."""
    _check_root(root)
    return target + pair(root, target) * coroot(root)


def dual_reflection_matrix(root: DivisorClass) -> Matrix:
    n = root.lattice.rank_curve
    cols = [dual_reflect(root, root.lattice.curve(tuple(int(i == k) for i in range(n)))).coeffs for k in range(n)]
    return mx.transpose(tuple(cols))


# orbit enumeration works on raw coefficient tuples for speed

def _raw_reflections(roots: Sequence[DivisorClass]) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    out = []
    for r in roots:
        _check_root(r)
        signed = (r.coeffs[0],) + tuple(-b for b in r.coeffs[1:])
        out.append((signed, coroot(r).coeffs))
    return tuple(out)


def _apply_raw(refl, v: tuple[int, ...]) -> tuple[int, ...]:
    signed, co = refl
    p = sum(a * b for a, b in zip(signed, v))
    if p == 0:
        return v
    return tuple(x + p * y for x, y in zip(v, co))


def _expand(args) -> list[tuple[int, ...]]:
    batch, reflections, limit = args
    out = []
    for v in batch:
        for refl in reflections:
            w = _apply_raw(refl, v)
            if abs(w[0]) <= limit:
                out.append(w)
    return out


def _workers(threads: int | str) -> int:
    if threads == "auto":
        return os.cpu_count() or 1
    n = int(threads)
    if n < 1:
        raise ValueError("threads must be >= 1 or 'auto'")
    return n


DEFAULT_SIZE_CAP = 10 ** 7


def orbit_enumerate(
    start: CurveClass,
    degree_bound: int,
    slack: int | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
    threads: int | str = 1,
) -> list[CurveClass]:
    """Classes of degree 1..degree_bound in the Weyl orbit of ``start``.

    Breadth-first closure under the simple dual reflections, exploring only
    classes with |degree| <= degree_bound + slack (slack defaults to
    2 * degree_bound). The orbit also contains negatives of such classes;
    only positive degrees are reported. Output is sorted lexicographically
    on coefficient vectors and does not depend on ``threads``.
    """
    lattice = start.lattice
    _require_p3_8(lattice)
    if anticanonical_degree(start) != 0:
        raise LatticeError("start class must have anticanonical degree 0")
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    slack = 2 * degree_bound if slack is None else slack
    if slack < 0:
        raise ValueError("slack must be nonnegative")
    limit = degree_bound + slack
    reflections = _raw_reflections(simple_roots(lattice))
    workers = _workers(threads)

    seen = {start.coeffs} if abs(start.coeffs[0]) <= limit else set()
    frontier = sorted(seen)
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            if pool is None:
                produced = _expand((frontier, reflections, limit))
            else:
                size = max(1, -(-len(frontier) // (4 * workers)))
                chunks = [(frontier[i:i + size], reflections, limit) for i in range(0, len(frontier), size)]
                produced = [w for part in pool.map(_expand, chunks) for w in part]
            new = set()
            for w in produced:
                if w not in seen:
                    seen.add(w)
                    new.add(w)
            if len(seen) > size_cap:
                raise OrbitSizeError(
                    f"orbit exceeded size cap {size_cap} (|degree| <= {limit}); raise --size-cap or lower the bound"
                )
            frontier = sorted(new)
    finally:
        if pool is not None:
            pool.shutdown()
    return [lattice.curve(v) for v in sorted(v for v in seen if 1 <= v[0] <= degree_bound)]


def is_line_class(c: CurveClass) -> bool:
    """True for h - e_i - e_j with i != j."""
    d = c.coeffs[1:]
    return c.coeffs[0] == 1 and sorted(d) == [-1, -1] + [0] * (len(d) - 2)


LINE_FORM = -3  # q*(h - e_i - e_j)


def descend(c: CurveClass, max_steps: int = 100_000) -> CurveClass:
    """Greedy descent: apply the lowest-index dual reflection that strictly
    lowers (degree, coefficients) while keeping the degree positive."""
    _require_p3_8(c.lattice)
    reflections = _raw_reflections(simple_roots(c.lattice))
    v = c.coeffs
    if v[0] < 0:
        v = tuple(-x for x in v)
    for _ in range(max_steps):
        for refl in reflections:
            w = _apply_raw(refl, v)
            if w[0] >= 1 and w < v:
                v = w
                break
        else:
            return c.lattice.curve(v)
    raise MembershipIndeterminate(f"descent did not terminate within {max_steps} steps")


def orbit_membership(c: CurveClass, max_steps: int = 100_000) -> bool:
    """Is ``c`` in the Weyl orbit of the class of a line through two points?

    Raises MembershipIndeterminate if the descent hits ``max_steps``.
    """
    _require_p3_8(c.lattice)
    if anticanonical_degree(c) != 0 or curve_form(c) != LINE_FORM:
        return False
    if c.coeffs[0] == 0:
        return False
    return is_line_class(descend(c, max_steps))


def coxeter_element(roots: RootSystem, order: Iterable[int] | None = None) -> Matrix:
    """Product of the simple reflections, applied in ``order`` (default index order)."""
    n = roots.lattice.rank_div
    order = range(len(roots.simple_roots)) if order is None else order
    m = mx.identity(n)
    for i in order:
        m = mx.matmul(reflection_matrix(roots.simple_roots[i]), m)
    return m


def restrict_to_roots(a: Matrix, roots: RootSystem) -> Matrix:
    """Matrix of ``a`` on the span of the simple roots, in the root basis."""
    basis = roots.basis_matrix()
    x = mx.solve_columns(basis, mx.matmul(a, basis))
    if any(v.denominator != 1 for row in x for v in row):
        raise RootError("map does not preserve the root lattice")
    return tuple(tuple(int(v) for v in row) for row in x)


@dataclass(frozen=True)
class CoxeterComparison:
    coxeter_poly: IntPolynomial
    step_poly: IntPolynomial

    @property
    def equal(self) -> bool:
        return self.coxeter_poly == self.step_poly


def coxeter_comparison(step: LatticeMap, roots: RootSystem, order: Iterable[int] | None = None) -> CoxeterComparison:
    cox = restrict_to_roots(coxeter_element(roots, order), roots)
    st = restrict_to_roots(step.div_matrix, roots)
    return CoxeterComparison(char_poly(cox), char_poly(st))


def coxeter_charpoly_check(step: LatticeMap, roots: RootSystem) -> bool:
    return coxeter_comparison(step, roots).equal


def orthogonal_to_canonical(roots: RootSystem) -> bool:
    k = canonical_class(roots.lattice)
    return all(q(r, k) == 0 for r in roots.simple_roots)


def line_classes(lattice: BlowupLattice = P3_8) -> list[CurveClass]:
    return sorted(
        (lattice.line_through(i, j) for i, j in combinations(range(1, lattice.num_points + 1), 2)),
        key=lambda c: c.coeffs,
    )
