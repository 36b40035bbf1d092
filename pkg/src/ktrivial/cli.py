"""Command line interface: ``ktrivial {family,verify,orbit,spectral,surface,roots}``.

Exit codes: 0 all checks passed, 1 a mathematical check failed,
2 usage or resource error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import io as kio
from .cremona import coxeter_step, family_start, iterate_family
from .lattice import P3_8, LatticeError, anticanonical_degree, degree
from .spectral import char_poly, cyclotomic_factorization, growth_certificate, jordan_at_one
from .surface import SurfaceSizeError, enumerate_minus2, pushforward
from .verify import corrupt_map, run_checks
from .weyl import (
    OrbitSizeError,
    coxeter_comparison,
    curve_form,
    orbit_enumerate,
    orthogonal_to_canonical,
    q,
    root_system,
)

log = logging.getLogger("ktrivial")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_max: int = 200
    degree_bound: int = 6
    coeff_bound: int = 2
    slack: int | None = None
    output_format: str = "json"
    cache_path: Path | None = None
    size_cap: int = 10 ** 7
    threads: int | str = 1
    inject_fault: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        for name in ("n_max", "degree_bound", "coeff_bound"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.slack is not None and self.slack < 0:
            raise ValueError("slack must be nonnegative")
        if self.size_cap < 1:
            raise ValueError("size_cap must be >= 1")


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _threads(text: str) -> int | str:
    if text == "auto":
        return text
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1 or 'auto'")
    return v


def _fault(text: str) -> tuple[int, int]:
    try:
        r, c = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected ROW,COL") from exc
    return r, c


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=_nonneg, default=200)
    common.add_argument("--degree-bound", type=_nonneg, default=6)
    common.add_argument("--coeff-bound", type=_nonneg, default=2)
    common.add_argument("--slack", type=_nonneg, default=None, help="orbit search slack (default 2*degree-bound)")
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    common.add_argument("--cache", dest="cache_path", type=Path, default=None)
    common.add_argument("--size-cap", type=int, default=10 ** 7)
    common.add_argument("--threads", type=_threads, default=1)
    common.add_argument("--inject-fault", type=_fault, default=None, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="ktrivial", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("family", parents=[common], help="iterate the Coxeter step on h - e7 - e8")
    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    sub.add_parser("orbit", parents=[common], help="enumerate the Weyl orbit of the line class")
    sub.add_parser("spectral", parents=[common], help="characteristic polynomial and Jordan data")
    sub.add_parser("surface", parents=[common], help="(-2)-classes on the fiber surface")
    sub.add_parser("roots", parents=[common], help="simple roots and their diagram")
    return parser


def _emit(text: str, out) -> None:
    out.write(text)


def cmd_family(cfg: RunConfig, out) -> int:
    fam = iterate_family(P3_8, family_start(P3_8), cfg.n_max)
    rows = [(n, c.coeffs, degree(c), anticanonical_degree(c), curve_form(c)) for n, c in enumerate(fam)]
    bad = [r[0] for r in rows if r[3] != 0]
    if cfg.output_format == "csv":
        _emit(kio.to_csv(("n", "class", "degree", "k_degree", "q_star"), ((n, kio.vector_cell(v), d, k, s) for n, v, d, k, s in rows)), out)
    else:
        payload = {
            "lattice": P3_8.describe(),
            "rows": [
                {"n": n, "class": [str(x) for x in v], "degree": str(d), "k_degree": str(k), "q_star": str(s)}
                for n, v, d, k, s in rows
            ],
        }
        if len(rows) >= 31:
            payload["growth"] = growth_certificate([r[2] for r in rows]).to_json()
        _emit(kio.dumps(payload), out)
    if bad:
        log.error("nonzero anticanonical degree at n = %s", bad[:10])
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    step = None
    if cfg.inject_fault is not None:
        step = corrupt_map(coxeter_step(P3_8), *cfg.inject_fault)
    results = run_checks(n_max=cfg.n_max, step=step)
    ok = all(r.passed for r in results)
    if cfg.output_format == "csv":
        _emit(kio.to_csv(("name", "passed", "detail"), ((r.name, r.passed, r.detail) for r in results)), out)
    else:
        _emit(kio.dumps({"passed": ok, "checks": [r.to_json() for r in results]}), out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_orbit(cfg: RunConfig, out) -> int:
    if cfg.degree_bound < 1:
        raise UsageError("orbit needs --degree-bound >= 1")
    start = family_start(P3_8)
    slack = 2 * cfg.degree_bound if cfg.slack is None else cfg.slack
    header = kio.OrbitHeader("P3", 8, start.coeffs, cfg.degree_bound, slack)
    classes = None
    if cfg.cache_path is not None and cfg.cache_path.exists():
        try:
            cached_header, cached = kio.read_orbit_cache(cfg.cache_path)
        except (kio.CacheError, LatticeError) as exc:
            log.warning("ignoring unusable cache %s: %s", cfg.cache_path, exc)
        else:
            if cached_header == header:
                log.info("reusing verified cache %s", cfg.cache_path)
                classes = cached
    if classes is None:
        classes = orbit_enumerate(start, cfg.degree_bound, slack, size_cap=cfg.size_cap, threads=cfg.threads)
        if cfg.cache_path is not None:
            kio.write_orbit_cache(cfg.cache_path, header, classes)
    counts = Counter(degree(c) for c in classes)
    if cfg.output_format == "csv":
        _emit(kio.to_csv(("degree", "count"), sorted(counts.items())), out)
    else:
        _emit(kio.dumps({"header": header.to_json(), "total": len(classes), "counts": {str(d): n for d, n in sorted(counts.items())}}), out)
    return EXIT_OK


def spectral_report() -> dict:
    step = coxeter_step(P3_8)
    p = char_poly(step.curve_matrix)
    parts = jordan_at_one(step.curve_matrix)
    fac = cyclotomic_factorization(p)
    cmp = coxeter_comparison(step, root_system(P3_8))
    return {
        "char_poly": p.to_json(),
        "char_poly_text": str(p),
        "jordan_at_one": list(parts),
        "multiplicity_of_one": p.root_multiplicity(1),
        "cyclotomic_factors": {str(n): k for n, k in sorted(fac.factors.items())},
        "cyclotomic_text": fac.describe(),
        "unit_circle": fac.unit_circle,
        "coxeter_poly_on_kperp": cmp.coxeter_poly.to_json(),
        "step_poly_on_kperp": cmp.step_poly.to_json(),
        "coxeter_match": cmp.equal,
    }


def cmd_spectral(cfg: RunConfig, out) -> int:
    rep = spectral_report()
    if cfg.output_format == "csv":
        rows = []
        for k, v in rep.items():
            if isinstance(v, list):
                v = " ".join(str(x) for x in v)
            elif isinstance(v, dict):
                v = " ".join(f"{a}:{b}" for a, b in v.items())
            rows.append((k, v))
        _emit(kio.to_csv(("key", "value"), rows), out)
    else:
        _emit(kio.dumps(rep), out)
    ok = rep["jordan_at_one"][0] == 3 and rep["unit_circle"] and rep["coxeter_match"]
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_surface(cfg: RunConfig, out) -> int:
    if cfg.coeff_bound < 1:
        raise UsageError("surface needs --coeff-bound >= 1")
    classes = enumerate_minus2(cfg.coeff_bound, size_cap=cfg.size_cap)
    rows = []
    for c in classes:
        pc = pushforward(c)
        rows.append((c.coeffs, pc.coeffs, anticanonical_degree(pc)))
    if cfg.output_format == "csv":
        _emit(kio.to_csv(("class", "pushforward", "k_degree"), ((kio.vector_cell(a), kio.vector_cell(b), k) for a, b, k in rows)), out)
    else:
        _emit(
            kio.dumps(
                {
                    "coeff_bound": cfg.coeff_bound,
                    "rows": [
                        {"class": [str(x) for x in a], "pushforward": [str(x) for x in b], "k_degree": str(k)}
                        for a, b, k in rows
                    ],
                }
            ),
            out,
        )
    return EXIT_OK if all(k == 0 for _, _, k in rows) else EXIT_CHECK_FAILED


def cmd_roots(cfg: RunConfig, out) -> int:
    rs = root_system(P3_8)
    arms = rs.arm_lengths()
    if cfg.output_format == "csv":
        _emit(kio.to_csv(("index", "root", "q"), ((i, kio.vector_cell(r.coeffs), q(r)) for i, r in enumerate(rs.simple_roots))), out)
    else:
        _emit(
            kio.dumps(
                {
                    "roots": [r.to_json() for r in rs.simple_roots],
                    "q_values": [q(r) for r in rs.simple_roots],
                    "edges": [list(e) for e in rs.edges()],
                    "arm_lengths": list(arms),
                }
            ),
            out,
        )
    ok = all(q(r) == -2 for r in rs.simple_roots) and orthogonal_to_canonical(rs) and arms == (2, 4, 4)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    "family": cmd_family,
    "verify": cmd_verify,
    "orbit": cmd_orbit,
    "spectral": cmd_spectral,
    "surface": cmd_surface,
    "roots": cmd_roots,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    opts = vars(args)
    opts.pop("verbose")
    try:
        cfg = RunConfig(**opts)
        return COMMANDS[cfg.command](cfg, out)
    except (UsageError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (OrbitSizeError, SurfaceSizeError, MemoryError) as exc:
        log.error("resource limit: %s; partial results discarded", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
