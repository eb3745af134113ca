"""Existence table over 1 <= p <= pmax, 1 <= N <= nmax.

Cell marks:
    bullet  - exists and no split into two smaller existing families
    circle  - exists and obtainable as a union of smaller existing families
    blank   - does not exist
    all     - p divisible by 4 (whole row exists)
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import CatalogEntry, exists, load_catalog, not_exists

BULLET = "bullet"
CIRCLE = "circle"
BLANK = "blank"
ALL = "all"
OPEN_MARK = "open"

GLYPH = {BULLET: "*", CIRCLE: "o", BLANK: ".", ALL: "#", OPEN_MARK: "?"}


@dataclass(frozen=True)
class Cell:
    p: int
    N: int
    mark: str
    status: str
    provenance: str
    decomposition: tuple[int, int] | None = None


@dataclass
class ExistenceTable:
    pmax: int
    nmax: int
    cells: dict[tuple[int, int], Cell]

    def mark(self, p: int, N: int) -> str:
        return self.cells[(p, N)].mark

    def row(self, p: int, ns=None) -> list[str]:
        ns = range(1, self.nmax + 1) if ns is None else ns
        return [self.mark(p, N) for N in ns]

    def render_text(self, even_only: bool = False, skip_multiples_of_4: bool = False) -> str:
        ns = [N for N in range(1, self.nmax + 1) if not even_only or N % 2 == 0]
        width = max(2, len(str(self.nmax)))
        lines = [
            "PCS_p^N existence: * bullet (direct)  o circle (union of smaller)  . none  # p divisible by 4",
            "p\\N " + " ".join(f"{N:>{width}}" for N in ns),
        ]
        for p in range(1, self.pmax + 1):
            if skip_multiples_of_4 and p % 4 == 0:
                continue
            lines.append(f"{p:>3} " + " ".join(f"{GLYPH[self.mark(p, N)]:>{width}}" for N in ns))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "pmax": self.pmax,
            "nmax": self.nmax,
            "rows": {
                str(p): [
                    {
                        "N": N,
                        "mark": c.mark,
                        "status": c.status,
                        "provenance": c.provenance,
                        "decomposition": list(c.decomposition) if c.decomposition else None,
                    }
                    for N in range(1, self.nmax + 1)
                    for c in [self.cells[(p, N)]]
                ]
                for p in range(1, self.pmax + 1)
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def _cell(e: CatalogEntry | None, p: int, N: int) -> Cell:
    if p % 4 == 0:
        status = e.status if e is not None else "exists-cited"
        return Cell(p, N, ALL, status, e.provenance if e else "prop:p-div-4", e.decomposition if e else None)
    if e is None:
        return Cell(p, N, OPEN_MARK, "open", "")
    if exists(e.status):
        mark = CIRCLE if e.decomposition else BULLET
    elif not_exists(e.status):
        mark = BLANK
    else:
        mark = OPEN_MARK
    return Cell(p, N, mark, e.status, e.provenance, e.decomposition)


def build_table(pmax: int = 12, nmax: int = 50, entries: list[CatalogEntry] | None = None) -> ExistenceTable:
    if entries is None:
        entries = load_catalog(pmax, nmax)
    by_key = {e.key: e for e in entries}
    cells = {
        (p, N): _cell(by_key.get((p, N)), p, N)
        for p in range(1, pmax + 1)
        for N in range(1, nmax + 1)
    }
    return ExistenceTable(pmax, nmax, cells)
