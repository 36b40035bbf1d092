"""Serialization: JSON with decimal-string integers, CSV, and the orbit cache.

The orbit cache is newline-delimited JSON. Line 1 is a header object
``{"ambient", "r", "start", "bound", "slack", "version"}``; every further
line is one class as an array of decimal strings, in lexicographic order.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .lattice import Ambient, BlowupLattice, CurveClass, anticanonical_degree
from .weyl import curve_form

CACHE_VERSION = 1


class CacheError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([str(x) for x in row])
    return buf.getvalue()


def vector_cell(v: Sequence[int]) -> str:
    """CSV cell for a coefficient vector: space-separated decimal integers."""
    return " ".join(str(x) for x in v)


def parse_vector_cell(cell: str) -> tuple[int, ...]:
    return tuple(int(x) for x in cell.split())


@dataclass(frozen=True)
class OrbitHeader:
    ambient: str
    r: int
    start: tuple[int, ...]
    bound: int
    slack: int
    version: int = CACHE_VERSION

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "r": self.r,
            "start": [str(x) for x in self.start],
            "bound": self.bound,
            "slack": self.slack,
            "version": self.version,
        }

    @classmethod
    def from_json(cls, data: dict) -> OrbitHeader:
        try:
            return cls(
                ambient=str(data["ambient"]),
                r=int(data["r"]),
                start=tuple(int(x) for x in data["start"]),
                bound=int(data["bound"]),
                slack=int(data["slack"]),
                version=int(data["version"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CacheError(f"malformed cache header: {exc}") from exc


def write_orbit_cache(path: Path, header: OrbitHeader, classes: Sequence[CurveClass]) -> None:
    lines = [json.dumps(header.to_json(), sort_keys=True)]
    lines += [json.dumps(c.to_json()) for c in classes]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_orbit_cache(path: Path) -> tuple[OrbitHeader, list[CurveClass]]:
    """Load a cache file and re-check the orbit invariants of every class."""
    text = Path(path).read_text(encoding="utf-8").splitlines()
    if not text:
        raise CacheError("empty cache file")
    try:
        header = OrbitHeader.from_json(json.loads(text[0]))
        rows = [tuple(int(x) for x in json.loads(line)) for line in text[1:] if line.strip()]
    except json.JSONDecodeError as exc:
        raise CacheError(f"cache is not valid NDJSON: {exc}") from exc
    if header.version != CACHE_VERSION:
        raise CacheError(f"cache version {header.version} != {CACHE_VERSION}")
    lattice = BlowupLattice(Ambient(header.ambient), header.r)
    start = lattice.curve(header.start)
    classes = [lattice.curve(r) for r in rows]
    if rows != sorted(rows) or len(set(rows)) != len(rows):
        raise CacheError("cache rows are not strictly sorted")
    want = (anticanonical_degree(start), curve_form(start))
    for c in classes:
        got = (anticanonical_degree(c), curve_form(c))
        if got != want or not 1 <= c.coeffs[0] <= header.bound:
            raise CacheError(f"class {list(c.coeffs)} fails orbit invariants {got} != {want}")
    return header, classes
