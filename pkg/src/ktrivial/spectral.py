"""Exact spectral tools for integer matrices.

Everything here works over the integers (or exact rationals internally);
there is no floating point anywhere, so every answer is a certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ._matrix import Matrix, add, identity, matmul, scale, shape, sub, trace


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __pow__(self, k: int) -> IntPolynomial:
        result = IntPolynomial((1,))
        for _ in range(k):
            result = result * self
        return result

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Long division by a monic (leading coefficient +-1) divisor."""
        if divisor.leading not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        rem = list(self.coeffs)
        d = divisor.degree
        if len(rem) - 1 < d:
            return IntPolynomial(()), self
        quot = [0] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            q = rem[k] * divisor.leading  # exact: leading is a unit
            quot[k - d] = q
            if q:
                for i, c in enumerate(divisor.coeffs):
                    rem[k - d + i] -= q * c
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:d]))

    def root_multiplicity(self, root: int) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial")
        lin = IntPolynomial((-root, 1))
        p, m = self, 0
        while True:
            q, r = p.divmod_monic(lin)
            if not r.is_zero():
                return m
            p, m = q, m + 1

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> IntPolynomial:
        return cls(tuple(int(x) for x in data))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("t" if k == 1 else f"t^{k}")
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


T_MINUS_ONE = IntPolynomial((-1, 1))


def char_poly(a: Matrix) -> IntPolynomial:
    """det(tI - A) by Faddeev-LeVerrier; every division is exact."""
    n, m = shape(a)
    if n != m:
        raise ValueError("char_poly needs a square matrix")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    eye = identity(n)
    for k in range(1, n + 1):
        mk = add(matmul(a, mk), scale(coeffs[n - k + 1], eye))
        num = -trace(matmul(a, mk))
        q, r = divmod(num, k)
        if r:
            raise ArithmeticError("non-exact division in Faddeev-LeVerrier")
        coeffs[n - k] = q
    return IntPolynomial(tuple(coeffs))


def evaluate_at_matrix(p: IntPolynomial, a: Matrix) -> Matrix:
    """p(A) via Horner's scheme."""
    n = len(a)
    acc = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    eye = identity(n)
    for c in reversed(p.coeffs):
        acc = add(matmul(acc, a), scale(c, eye))
    return acc


def _bareiss(a: Matrix) -> tuple[int, int, int]:
    """Fraction-free elimination. Returns (rank, last pivot, sign of row swaps)."""
    rows, cols = shape(a)
    m = [list(r) for r in a]
    prev = 1
    sign = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, cols):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r, prev, sign


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return _bareiss(a)[0]


def determinant(a: Matrix) -> int:
    n, m = shape(a)
    if n != m:
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    r, last, sign = _bareiss(a)
    return sign * last if r == n else 0


def jordan_at_one(a: Matrix) -> tuple[int, ...]:
    """Jordan block sizes at eigenvalue 1, largest first.

    Uses ranks of (A - I)^k: the number of blocks of size >= k is
    rank((A-I)^(k-1)) - rank((A-I)^k).
    """
    n, m = shape(a)
    if n != m:
        raise ValueError("jordan_at_one needs a square matrix")
    n_mat = sub(a, identity(n))
    ranks = [n]
    power = identity(n)
    while True:
        power = matmul(power, n_mat)
        ranks.append(rank(power))
        if ranks[-1] == ranks[-2]:
            break
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes: list[int] = []
    for k, count in enumerate(at_least, start=1):
        exactly = count - (at_least[k] if k < len(at_least) else 0)
        sizes.extend([k] * exactly)
    return tuple(sorted(sizes, reverse=True))


def _euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


_CYCLOTOMIC_CACHE: dict[int, IntPolynomial] = {}


def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, from t^n - 1 = prod_{d | n} Phi_d."""
    if n < 1:
        raise ValueError("n must be positive")
    if n not in _CYCLOTOMIC_CACHE:
        p = IntPolynomial.monomial(n) - IntPolynomial((1,))
        for d in range(1, n):
            if n % d == 0:
                p, r = p.divmod_monic(cyclotomic(d))
                assert r.is_zero()
        _CYCLOTOMIC_CACHE[n] = p
    return _CYCLOTOMIC_CACHE[n]


@dataclass(frozen=True)
class CyclotomicFactorization:
    factors: dict[int, int]  # n -> multiplicity of Phi_n
    cofactor: IntPolynomial

    @property
    def unit_circle(self) -> bool:
        """True iff every root is a root of unity (cofactor is a unit)."""
        return self.cofactor.coeffs in ((1,), (-1,))

    def describe(self) -> str:
        parts = [f"Phi_{n}^{k}" if k > 1 else f"Phi_{n}" for n, k in sorted(self.factors.items())]
        if self.cofactor.coeffs != (1,):
            parts.append(f"({self.cofactor})")
        return " * ".join(parts) if parts else "1"


def cyclotomic_factorization(p: IntPolynomial) -> CyclotomicFactorization:
    if p.is_zero():
        raise ValueError("zero polynomial")
    deg = p.degree
    factors: dict[int, int] = {}
    rest = p
    # phi(n) >= sqrt(n/2), so phi(n) <= deg forces n <= 2 deg^2
    for n in range(1, 2 * max(deg, 1) ** 2 + 1):
        if _euler_phi(n) > rest.degree:
            continue
        phi_n = cyclotomic(n)
        while rest.degree >= phi_n.degree:
            q, r = rest.divmod_monic(phi_n)
            if not r.is_zero():
                break
            factors[n] = factors.get(n, 0) + 1
            rest = q
    return CyclotomicFactorization(factors, rest)


@dataclass(frozen=True)
class GrowthReport:
    """Result of growth_certificate.

    ``unbounded`` is the headline check. ``order`` and the periodic tail
    are a refinement beyond plain unboundedness: ``order`` is the smallest
    k whose k-th differences are eventually periodic (None if none up to
    ``max_order``). With k >= 1 and a positive mean of that periodic tail
    the sequence grows like n^k; order 0 means eventually periodic.
    """

    length: int
    running_max_increases: tuple[int, ...]
    unbounded: bool
    order: int | None
    period: int | None
    tail_pattern: tuple[int, ...]
    mean_leading_difference: Fraction | None
    quadratic: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "quadratic", self.order == 2 and self.growing)

    @property
    def growing(self) -> bool:
        return bool(self.order) and self.mean_leading_difference is not None and self.mean_leading_difference > 0

    @property
    def passed(self) -> bool:
        return self.unbounded

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "unbounded": self.unbounded,
            "running_max_increase_count": len(self.running_max_increases),
            "refinement": {
                "note": "growth order is a refinement beyond unboundedness",
                "order": self.order,
                "growing": self.growing,
                "quadratic": self.quadratic,
                "period": self.period,
                "tail_pattern": [str(x) for x in self.tail_pattern],
                "mean_leading_difference": (
                    None if self.mean_leading_difference is None else str(self.mean_leading_difference)
                ),
            },
        }


MIN_GROWTH_LENGTH = 31


def _differences(seq: Sequence[int]) -> list[int]:
    return [b - a for a, b in zip(seq, seq[1:])]


def _tail_period(seq: Sequence[int]) -> int | None:
    """Smallest p <= len/4 with seq[i] == seq[i+p] across the second half."""
    m = len(seq)
    start = m // 2
    for p in range(1, m // 4 + 1):
        if all(seq[i] == seq[i + p] for i in range(start, m - p)):
            return p
    return None


def growth_certificate(degrees: Sequence[int], max_order: int = 3) -> GrowthReport:
    if len(degrees) < MIN_GROWTH_LENGTH:
        raise ValueError(f"need at least {MIN_GROWTH_LENGTH} terms, got {len(degrees)}")
    seq = [int(d) for d in degrees]
    increases = []
    best = seq[0]
    for i, d in enumerate(seq[1:], start=1):
        if d > best:
            increases.append(i)
            best = d
    # unbounded over the range: the running max keeps rising in every quarter
    m = len(seq)
    quarters = [(k * m // 4, (k + 1) * m // 4) for k in range(4)]
    unbounded = all(any(lo <= i < hi for i in increases) for lo, hi in quarters)

    order = period = None
    pattern: tuple[int, ...] = ()
    mean = None
    diffs = seq
    for k in range(0, max_order + 1):
        if k:
            diffs = _differences(diffs)
        p = _tail_period(diffs)
        if p is not None:
            order, period = k, p
            pattern = tuple(diffs[len(diffs) - p:])
            mean = Fraction(sum(pattern), p)
            break
    return GrowthReport(
        length=m,
        running_max_increases=tuple(increases),
        unbounded=unbounded,
        order=order,
        period=period,
        tail_pattern=pattern,
        mean_leading_difference=mean,
    )
