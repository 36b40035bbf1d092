"""Named invariant checks run by ``ktrivial verify``."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import _matrix as mx
from .cremona import (
    CREMONA_CURVE_BLOCK,
    CREMONA_DIV_BLOCK,
    LatticeMap,
    coxeter_step,
    family_start,
    standard_cremona,
)
from .lattice import (
    P3_8,
    Ambient,
    BlowupLattice,
    anticanonical_class,
    anticanonical_degree,
    degree,
    pair,
    triple_self_intersection,
)
from .spectral import (
    T_MINUS_ONE,
    char_poly,
    cyclotomic_factorization,
    evaluate_at_matrix,
    growth_certificate,
    jordan_at_one,
)
from .surface import (
    canonical_surface_class,
    enumerate_minus2,
    kperp_semidefiniteness,
    pushforward,
    surface_pair,
)
from .weyl import (
    coxeter_charpoly_check,
    curve_form,
    orbit_enumerate,
    orbit_membership,
    orthogonal_to_canonical,
    q,
    root_system,
)

# The Coxeter step's action on curve classes, as printed with the construction.
REFERENCE_STEP_CURVE_MATRIX = (
    (3, 2, 2, 2, 2, 0, 0, 0, 0),
    (-1, -1, 0, -1, -1, 0, 0, 0, 0),
    (-1, -1, -1, 0, -1, 0, 0, 0, 0),
    (-1, -1, -1, -1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1),
    (-1, 0, -1, -1, -1, 0, 0, 0, 0),
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.data:
            out["data"] = self.data
        return out


def corrupt_map(m: LatticeMap, row: int, col: int, delta: int = 1, side: str = "curve") -> LatticeMap:
    """Copy of ``m`` with one matrix entry shifted by ``delta`` (fault injection)."""
    target = m.curve_matrix if side == "curve" else m.div_matrix
    rows = [list(r) for r in target]
    rows[row][col] += delta
    bad = mx.as_matrix(rows)
    if side == "curve":
        return LatticeMap(m.lattice, m.div_matrix, bad)
    return LatticeMap(m.lattice, bad, m.curve_matrix)


def _lattice_checks() -> list[CheckResult]:
    lat = P3_8
    minus_k = anticanonical_class(lat)
    out = [
        CheckResult(
            "pair(-K, h-e1-e2) == 0",
            pair(minus_k, lat.line_through(1, 2)) == 0,
        ),
        CheckResult(
            "K-degree of 3h-e1-...-e6 == 0",
            anticanonical_degree(lat.curve((3,) + (-1,) * 6 + (0, 0))) == 0,
        ),
        CheckResult(
            "K-degree of all 28 lines h-ei-ej and 28 cubics 3h-e_S == 0",
            all(anticanonical_degree(lat.line_through(i, j)) == 0 for i, j in combinations(range(1, 9), 2))
            and all(
                anticanonical_degree(lat.curve((3,) + tuple(-1 if k in s else 0 for k in range(1, 9)))) == 0
                for s in combinations(range(1, 9), 6)
            ),
        ),
        CheckResult("(-K)^3 == 0 on P3 at 8 points", triple_self_intersection(minus_k) == 0),
    ]
    cubes = {r: triple_self_intersection(anticanonical_class(BlowupLattice(Ambient.P3, r))) for r in range(9)}
    out.append(
        CheckResult("(-K)^3 == 64 - 8r for r <= 8", all(v == 64 - 8 * r for r, v in cubes.items()), data={"values": cubes})
    )
    p1 = BlowupLattice(Ambient.P1CUBED, 6)
    out.append(CheckResult("(-K)^3 == 0 on (P1)^3 at 6 points", triple_self_intersection(anticanonical_class(p1)) == 0))
    return out


def _map_check(name: str, m: LatticeMap) -> CheckResult:
    v = m.violations()
    return CheckResult(
        name,
        not v,
        "; ".join(str(x) for x in v),
        data={"offending_entries": {x.invariant: [list(e) for e in x.entries] for x in v}} if v else {},
    )


def _cremona_checks(step: LatticeMap) -> list[CheckResult]:
    lat = P3_8
    cr = standard_cremona(lat, (1, 2, 3, 4))
    eye = mx.identity(9)
    block_div = tuple(r[:5] for r in cr.div_matrix[:5])
    block_curve = tuple(r[:5] for r in cr.curve_matrix[:5])
    step_mismatch = [
        (r, c) for r in range(9) for c in range(9) if step.curve_matrix[r][c] != REFERENCE_STEP_CURVE_MATRIX[r][c]
    ]
    return [
        CheckResult(
            "Cremona blocks match the reference matrices",
            block_div == CREMONA_DIV_BLOCK and block_curve == CREMONA_CURVE_BLOCK,
        ),
        CheckResult(
            "Cremona is an involution",
            mx.matmul(cr.div_matrix, cr.div_matrix) == eye and mx.matmul(cr.curve_matrix, cr.curve_matrix) == eye,
        ),
        _map_check("Cremona map invariants", cr),
        _map_check("Coxeter step invariants", step),
        CheckResult(
            "Coxeter step curve matrix equals the reference 9x9 matrix",
            not step_mismatch,
            f"mismatched entries {step_mismatch}" if step_mismatch else "",
        ),
    ]


def _family_checks(step: LatticeMap, n_max: int) -> list[CheckResult]:
    fam = [family_start(P3_8)]
    for _ in range(n_max):
        fam.append(step.apply_curve(fam[-1]))
    bad = [n for n, c in enumerate(fam) if anticanonical_degree(c) != 0]
    bad_q = [n for n, c in enumerate(fam) if curve_form(c) != -3]
    report = growth_certificate([degree(c) for c in fam])
    return [
        CheckResult(f"K-degree of C_n == 0 for n <= {n_max}", not bad, f"failing n: {bad[:10]}" if bad else ""),
        CheckResult(f"q*(C_n) == -3 for n <= {n_max}", not bad_q),
        CheckResult("degrees of C_n are unbounded", report.passed, data=report.to_json()),
    ]


def _spectral_checks(step: LatticeMap) -> list[CheckResult]:
    p = char_poly(step.curve_matrix)
    parts = jordan_at_one(step.curve_matrix)
    fac = cyclotomic_factorization(p)
    zero = mx.as_matrix([[0] * 9] * 9)
    return [
        CheckResult("largest Jordan block at 1 has size 3", parts[0] == 3, data={"partition": list(parts)}),
        CheckResult(
            "Jordan partition at 1 sums to multiplicity of (t-1)",
            sum(parts) == p.root_multiplicity(1),
        ),
        CheckResult("char poly is a product of cyclotomics", fac.unit_circle, fac.describe()),
        CheckResult(
            "Cayley-Hamilton for the Coxeter step",
            evaluate_at_matrix(p, step.curve_matrix) == zero and evaluate_at_matrix(char_poly(step.div_matrix), step.div_matrix) == zero,
        ),
        CheckResult("det of Coxeter step is +-1", p.coeffs[0] in (1, -1)),
        CheckResult("(t-1) divides char poly", not p.divmod_monic(T_MINUS_ONE)[1].coeffs),
    ]


def _weyl_checks(step: LatticeMap) -> list[CheckResult]:
    rs = root_system(P3_8)
    start = family_start(P3_8)
    orbit1 = orbit_enumerate(start, 1)
    orbit3 = {c.coeffs for c in orbit_enumerate(start, 3)}
    cubics = {(3,) + tuple(-1 if k in s else 0 for k in range(1, 9)) for s in combinations(range(1, 9), 6)}
    c1 = step.apply_curve(start)
    return [
        CheckResult(
            "simple roots: q = -2, orthogonal to K",
            all(q(r) == -2 for r in rs.simple_roots) and orthogonal_to_canonical(rs),
            data={"count": len(rs.simple_roots)},
        ),
        CheckResult("root diagram is T_{2,4,4}", rs.is_tree() and rs.arm_lengths() == (2, 4, 4), data={"arms": list(rs.arm_lengths())}),
        CheckResult("orbit of the line class at degree <= 1 has 28 classes", len(orbit1) == 28),
        CheckResult("orbit at degree <= 3 contains all 28 twisted cubic classes", cubics <= orbit3),
        CheckResult("C_1 is in the line orbit", orbit_membership(c1)),
        CheckResult("B' = 4h - sum e_i is not in the line orbit", not orbit_membership(P3_8.curve((4,) + (-1,) * 8))),
        CheckResult("Coxeter element and step share the char poly on K^perp", coxeter_charpoly_check(step, rs)),
    ]


def _surface_checks() -> list[CheckResult]:
    k = canonical_surface_class()
    cert = kperp_semidefiniteness()
    classes = enumerate_minus2(1)
    pushed_ok = all(anticanonical_degree(pushforward(c)) == 0 for c in classes)
    adj = all(anticanonical_degree(pushforward(c)) == -2 * surface_pair(k, c) for c in classes)
    return [
        CheckResult("K_S^2 == 0", surface_pair(k, k) == 0),
        CheckResult("K_S^perp is negative semidefinite with kernel Z K_S", cert.holds, data=cert.to_json()),
        CheckResult("(-2)-classes push forward to K-trivial curves", pushed_ok and adj, data={"count_bound_1": len(classes)}),
    ]


def run_checks(n_max: int = 200, step: LatticeMap | None = None) -> list[CheckResult]:
    """Full invariant suite. ``step`` overrides the Coxeter step (fault injection)."""
    step = coxeter_step(P3_8) if step is None else step
    sections: list[Callable[[], list[CheckResult]]] = [
        _lattice_checks,
        lambda: _cremona_checks(step),
        lambda: _family_checks(step, n_max),
        lambda: _spectral_checks(step),
        lambda: _weyl_checks(step),
        _surface_checks,
    ]
    results: list[CheckResult] = []
    for section in sections:
        try:
            results.extend(section())
        except Exception as exc:  # a crashing section is a failed check, not a skipped one
            results.append(CheckResult(getattr(section, "__name__", "section"), False, f"raised {exc!r}"))
    return results
