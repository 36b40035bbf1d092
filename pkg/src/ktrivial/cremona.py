"""Lattice actions of Cremona transformations and point permutations on
blow-ups of P^3.

Classes are column vectors and matrices act on the left. ``compose([A, B])``
means "apply A, then B", i.e. the matrix product B @ A.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _matrix as mx
from ._matrix import Matrix
from .lattice import (
    Ambient,
    BlowupLattice,
    CurveClass,
    DivisorClass,
    LatticeError,
    LatticeMismatchError,
    UnsupportedLatticeError,
    canonical_class,
)
from .spectral import determinant

# Action of the standard Cremona involution on span(H, E_1..E_4) and
# span(h, e_1..e_4), columns are images of basis vectors.
CREMONA_DIV_BLOCK: Matrix = (
    (3, 1, 1, 1, 1),
    (-2, 0, -1, -1, -1),
    (-2, -1, 0, -1, -1),
    (-2, -1, -1, 0, -1),
    (-2, -1, -1, -1, 0),
)
CREMONA_CURVE_BLOCK: Matrix = (
    (3, 2, 2, 2, 2),
    (-1, 0, -1, -1, -1),
    (-1, -1, 0, -1, -1),
    (-1, -1, -1, 0, -1),
    (-1, -1, -1, -1, 0),
)


class LatticeMapError(LatticeError):
    pass


@dataclass(frozen=True)
class Violation:
    invariant: str
    entries: tuple[tuple[int, int], ...]  # 0-based (row, col) of offending entries
    detail: str

    def __str__(self) -> str:
        return f"{self.invariant}: {self.detail}"


@dataclass(frozen=True)
class LatticeMap:
    lattice: BlowupLattice
    div_matrix: Matrix
    curve_matrix: Matrix

    def __post_init__(self) -> None:
        if self.lattice.ambient is not Ambient.P3:
            raise UnsupportedLatticeError("lattice maps are implemented on P3 blow-ups")
        n = self.lattice.rank_div
        object.__setattr__(self, "div_matrix", mx.as_matrix(self.div_matrix))
        object.__setattr__(self, "curve_matrix", mx.as_matrix(self.curve_matrix))
        if mx.shape(self.div_matrix) != (n, n) or mx.shape(self.curve_matrix) != (n, n):
            raise LatticeMapError(f"matrices must be {n}x{n}")

    def violations(self) -> list[Violation]:
        """Every broken invariant, with coordinates of offending entries."""
        out = []
        j = mx.diagonal(self.lattice.pairing_signs())
        lhs = mx.matmul(mx.matmul(mx.transpose(self.div_matrix), j), self.curve_matrix)
        bad = tuple(
            (r, c) for r in range(len(j)) for c in range(len(j)) if lhs[r][c] != j[r][c]
        )
        if bad:
            out.append(Violation("intertwining", bad, f"div^T J curve != J at {list(bad)}"))
        k = canonical_class(self.lattice).coeffs
        mk = mx.matvec(self.div_matrix, k)
        bad_k = tuple((r, 0) for r in range(len(k)) if mk[r] != k[r])
        if bad_k:
            out.append(Violation("fixes_canonical", bad_k, f"div K = {list(mk)} != K"))
        for name, m in (("div_matrix", self.div_matrix), ("curve_matrix", self.curve_matrix)):
            d = determinant(m)
            if d not in (1, -1):
                out.append(Violation(f"unimodular_{name}", (), f"det = {d}"))
        return out

    def check(self) -> LatticeMap:
        v = self.violations()
        if v:
            raise LatticeMapError("; ".join(str(x) for x in v))
        return self

    def apply_div(self, d: DivisorClass) -> DivisorClass:
        if d.lattice != self.lattice:
            raise LatticeMismatchError("divisor not on this map's lattice")
        return DivisorClass(self.lattice, mx.matvec(self.div_matrix, d.coeffs))

    def apply_curve(self, c: CurveClass) -> CurveClass:
        if c.lattice != self.lattice:
            raise LatticeMismatchError("curve not on this map's lattice")
        return CurveClass(self.lattice, mx.matvec(self.curve_matrix, c.coeffs))

    def is_identity(self) -> bool:
        eye = mx.identity(self.lattice.rank_div)
        return self.div_matrix == eye and self.curve_matrix == eye


def identity_map(lattice: BlowupLattice) -> LatticeMap:
    eye = mx.identity(lattice.rank_div)
    return LatticeMap(lattice, eye, eye)


def _embed_block(block: Matrix, slots: Sequence[int], n: int) -> Matrix:
    m = [list(row) for row in mx.identity(n)]
    for a, ia in enumerate(slots):
        for b, ib in enumerate(slots):
            m[ia][ib] = block[a][b]
    return mx.as_matrix(m)


def standard_cremona(lattice: BlowupLattice, centers: Sequence[int] = (1, 2, 3, 4)) -> LatticeMap:
    """Cremona transformation centered at four of the blown-up points."""
    if lattice.ambient is not Ambient.P3:
        raise UnsupportedLatticeError("standard Cremona acts on P3 blow-ups")
    if lattice.num_points < 4:
        raise LatticeMapError("need at least 4 blown-up points")
    centers = tuple(centers)
    if len(centers) != 4 or len(set(centers)) != 4:
        raise LatticeMapError(f"need 4 distinct centers, got {centers}")
    for c in centers:
        if not 1 <= c <= lattice.num_points:
            raise LatticeMapError(f"center {c} out of range 1..{lattice.num_points}")
    slots = (0,) + centers
    n = lattice.rank_div
    return LatticeMap(
        lattice,
        _embed_block(CREMONA_DIV_BLOCK, slots, n),
        _embed_block(CREMONA_CURVE_BLOCK, slots, n),
    ).check()


def point_permutation(lattice: BlowupLattice, perm: Sequence[int]) -> LatticeMap:
    """Relabel the points: the new slot i receives the old slot ``perm[i-1]``.

    ``perm`` is 1-based. Moving the first point to the end of the list is
    ``(2, 3, ..., r, 1)``.
    """
    r = lattice.num_points
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, r + 1)):
        raise LatticeMapError(f"{perm} is not a permutation of 1..{r}")
    n = lattice.rank_div
    m = [[0] * n for _ in range(n)]
    m[0][0] = 1
    for i, src in enumerate(perm, start=1):
        m[i][src] = 1
    p = mx.as_matrix(m)
    # permutation matrices are orthogonal, so the same matrix works on both sides
    return LatticeMap(lattice, p, p).check()


def cycle_first_to_end(lattice: BlowupLattice) -> LatticeMap:
    r = lattice.num_points
    return point_permutation(lattice, tuple(range(2, r + 1)) + (1,))


def compose(maps: Sequence[LatticeMap]) -> LatticeMap:
    if not maps:
        raise LatticeMapError("compose needs at least one map")
    lattice = maps[0].lattice
    div = curve = mx.identity(lattice.rank_div)
    for m in maps:
        if m.lattice != lattice:
            raise LatticeMismatchError("cannot compose maps on different lattices")
        div = mx.matmul(m.div_matrix, div)
        curve = mx.matmul(m.curve_matrix, curve)
    return LatticeMap(lattice, div, curve).check()


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm, start=1):
        inv[p - 1] = i
    return tuple(inv)


def coxeter_step(lattice: BlowupLattice) -> LatticeMap:
    """Cremona at points 1..4, then move the first point to the end."""
    if lattice.ambient is not Ambient.P3 or lattice.num_points != 8:
        raise UnsupportedLatticeError("the Coxeter step is defined on P3 blown up at 8 points")
    return compose([standard_cremona(lattice, (1, 2, 3, 4)), cycle_first_to_end(lattice)])


def family_start(lattice: BlowupLattice) -> CurveClass:
    """h - e_7 - e_8: a line through the last two points."""
    return lattice.line_through(7, 8)


def iterate_family(lattice: BlowupLattice, start: CurveClass, n_max: int) -> list[CurveClass]:
    """[C_0, ..., C_{n_max}] with C_{k+1} = step(C_k)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    step = coxeter_step(lattice)
    out = [start]
    for _ in range(n_max):
        out.append(step.apply_curve(out[-1]))
    return out
