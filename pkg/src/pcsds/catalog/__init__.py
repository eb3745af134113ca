"""Knowledge base of PCS existence facts, verified witnesses, and their closure.

Layout of the asset directory::

    assets/sds/*.sds     explicit SDS listings (text SDS format)
    assets/seq/*.seq     sequence families (Golay 26 kernel, search witnesses)
    assets/facts.txt     one fact per line: p N status citation
    assets/CHECKSUMS     sha256 of every asset, checked on each load

Nothing is trusted from disk: every witness is re-verified from the raw
bytes whenever it is loaded.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from pathlib import Path

from ..construct import GolayPair, acs4_catalog, golay_pairs
from ..errors import CatalogContradiction, ParseError, VerificationError
from ..formats import parse_sds_text, parse_sequence_file
from ..sds import SdsFamily, check_linear_constraint, sds_to_pcs, verify_sds
from ..seqcore import SequenceFamily, is_pcs

ASSET_DIR = Path(__file__).with_name("assets")

EXISTS_WITNESS = "exists-witness"
EXISTS_CITED = "exists-cited"
NOT_EXISTS_CITED = "not-exists-cited"
NOT_EXISTS_EXHAUSTED = "not-exists-exhausted"
OPEN = "open"
STATUSES = (EXISTS_WITNESS, EXISTS_CITED, NOT_EXISTS_CITED, NOT_EXISTS_EXHAUSTED, OPEN)

# strength order inside each polarity; open is weaker than everything
_RANK = {OPEN: 0, EXISTS_CITED: 1, EXISTS_WITNESS: 2, NOT_EXISTS_CITED: 1, NOT_EXISTS_EXHAUSTED: 2}

LISTED_SDS_FILES = (
    "p3-n36", "p3-n40", "p3-n44", "p3-n48",
    "p5-n44", "p5-n48",
    "p6-n38", "p6-n42", "p6-n46", "p6-n42-b",
)


def exists(status: str) -> bool:
    return status in (EXISTS_WITNESS, EXISTS_CITED)


def not_exists(status: str) -> bool:
    return status in (NOT_EXISTS_CITED, NOT_EXISTS_EXHAUSTED)


@dataclass(frozen=True)
class CatalogEntry:
    p: int
    N: int
    status: str
    witness: SdsFamily | SequenceFamily | None = None
    provenance: str = ""
    run_id: str | None = None
    decomposition: tuple[int, int] | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == EXISTS_WITNESS and self.witness is None:
            raise ValueError(f"({self.p},{self.N}): exists-witness entry without a witness")
        if self.status == NOT_EXISTS_EXHAUSTED and not self.run_id:
            raise ValueError(f"({self.p},{self.N}): exhausted entry without a search run id")

    @property
    def key(self) -> tuple[int, int]:
        return (self.p, self.N)

    def sequences(self) -> SequenceFamily | None:
        if self.witness is None or isinstance(self.witness, SequenceFamily):
            return self.witness
        return sds_to_pcs(self.witness)


def strengthen(old: CatalogEntry | None, new: CatalogEntry) -> CatalogEntry:
    """Merge `new` into `old`, allowing only open -> anything and cited -> witness/exhausted."""
    if old is None or old.status == OPEN:
        return new
    if new.status == OPEN:
        return old
    if exists(old.status) != exists(new.status):
        raise CatalogContradiction(
            f"({old.p},{old.N}): {old.status} [{old.provenance}] vs {new.status} [{new.provenance}]"
        )
    return new if _RANK[new.status] > _RANK[old.status] else old


# asset loading ---------------------------------------------------------------------

def _checksums() -> dict[str, str]:
    out = {}
    for line in (ASSET_DIR / "CHECKSUMS").read_text().splitlines():
        if line.strip():
            digest, name = line.split(None, 1)
            out[name.strip()] = digest
    return out


def read_asset(relpath: str) -> str:
    """Asset text, after checking it against the recorded sha256."""
    data = (ASSET_DIR / relpath).read_bytes()
    expected = _checksums().get(relpath)
    if expected is None:
        raise VerificationError(f"asset {relpath} has no recorded checksum")
    if hashlib.sha256(data).hexdigest() != expected:
        raise VerificationError(f"asset {relpath} does not match its checksum")
    return data.decode()


def load_sds_asset(name: str) -> SdsFamily:
    fam = parse_sds_text(read_asset(f"sds/{name}.sds"))
    rep = verify_sds(fam)
    if not rep.ok:
        raise VerificationError(f"{name}: {rep.describe()}")
    if not check_linear_constraint(fam.parameters):
        raise VerificationError(f"{name}: parameters {fam.parameters} violate the linear identity")
    pcs = is_pcs(sds_to_pcs(fam))
    if not pcs:
        raise VerificationError(f"{name}: converted family fails: {pcs.describe()}")
    return fam


def load_paper_assets() -> list[CatalogEntry]:
    """The ten printed SDS listings, each verified and converted on load."""
    out = []
    for name in LISTED_SDS_FILES:
        fam = load_sds_asset(name)
        out.append(CatalogEntry(fam.p, fam.modulus, EXISTS_WITNESS, fam, f"listing:{name}"))
    return out


def load_sequence_asset(name: str):
    return parse_sequence_file(read_asset(f"seq/{name}.seq"))


def load_golay26() -> GolayPair:
    sf = load_sequence_asset("golay26")
    if sf.role != "golay" or len(sf.sequences) != 2 or len(sf.sequences[0]) != 26:
        raise VerificationError("golay26 asset is not a length-26 pair")
    return GolayPair(*sf.sequences)  # constructor re-verifies


def load_search_witnesses() -> list[CatalogEntry]:
    out = []
    for path in sorted((ASSET_DIR / "seq").glob("pcs*.seq")):
        sf = load_sequence_asset(path.stem)
        fam = sf.family()
        rep = is_pcs(fam)
        if not rep:
            raise VerificationError(f"{path.stem}: {rep.describe()}")
        config = next((c.split(":", 1)[1].strip() for c in sf.comments if c.startswith("# config:")), None)
        out.append(CatalogEntry(
            fam.p, fam.n, EXISTS_WITNESS, fam, f"search:{path.stem}", run_id=config,
        ))
    return out


# base facts ------------------------------------------------------------------------

def parse_facts(text: str) -> list[CatalogEntry]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 3)
        if len(parts) < 4:
            raise ParseError(f"facts line {lineno}: expected 'p N status citation'")
        p, N, status, citation = parts
        if status not in (EXISTS_CITED, NOT_EXISTS_CITED, OPEN):
            raise ParseError(f"facts line {lineno}: status {status!r} not allowed in facts file")
        out.append(CatalogEntry(int(p), int(N), status, None, citation))
    return out


def parity_facts(pmax: int = 12, nmax: int = 50) -> list[CatalogEntry]:
    """N > 1 with 4 not dividing pN is impossible: 4(sum k - lambda) = pN."""
    out = []
    for p in range(1, pmax + 1):
        for N in range(2, nmax + 1):
            if (p * N) % 4:
                out.append(CatalogEntry(p, N, NOT_EXISTS_CITED, None, "identity:linear-parity"))
    return out


def trivial_facts(pmax: int = 12) -> list[CatalogEntry]:
    return [
        CatalogEntry(p, 1, EXISTS_WITNESS, SequenceFamily.of(*["+"] * p), "trivial:length-1")
        for p in range(1, pmax + 1)
    ]


def materialized_witnesses(nmax: int = 50) -> list[CatalogEntry]:
    """Witnesses this package can build: Golay pairs, ACS_4 and its multiples, listings, searches."""
    out = [CatalogEntry(1, 4, EXISTS_WITNESS, SequenceFamily.of("+++-"), "sequence:+++-")]
    for N, g in golay_pairs(nmax).items():
        out.append(CatalogEntry(2, N, EXISTS_WITNESS, g.family(), f"golay:length-{N}"))
    for N in range(1, nmax + 1):
        e = acs4_catalog(N)
        if e.has_witness:
            fam = e.family
            for mult in (1, 2, 3):
                members = fam.members * mult
                out.append(CatalogEntry(4 * mult, N, EXISTS_WITNESS, SequenceFamily(members),
                                        f"acs4:{e.provenance}" + (f" x{mult}" if mult > 1 else "")))
    out.extend(load_paper_assets())
    out.extend(load_search_witnesses())
    return out


def base_facts(pmax: int = 12, nmax: int = 50) -> list[CatalogEntry]:
    """Cited facts, parity exclusions and every materialized witness, merged per cell."""
    cells: dict[tuple[int, int], CatalogEntry] = {}
    sources = (
        parse_facts(read_asset("facts.txt"))
        + parity_facts(pmax, nmax)
        + trivial_facts(pmax)
        + materialized_witnesses(nmax)
    )
    for e in sources:
        if e.p <= pmax and e.N <= nmax:
            cells[e.key] = strengthen(cells.get(e.key), e)
    return [cells[k] for k in sorted(cells)]


def record_exhaustive(entries: list[CatalogEntry], outcome, p: int, N: int, run_id: str) -> list[CatalogEntry]:
    """Fold an exhaustive search result into the catalog."""
    from ..search import EXHAUSTED_NONE, FOUND

    cells = {e.key: e for e in entries}
    if outcome.status == EXHAUSTED_NONE:
        new = CatalogEntry(p, N, NOT_EXISTS_EXHAUSTED, None, f"exhaustive:{outcome.target}", run_id=run_id)
    elif outcome.status == FOUND:
        new = CatalogEntry(p, N, EXISTS_WITNESS, outcome.witnesses[0], f"exhaustive:{outcome.target}", run_id=run_id)
    else:
        return entries
    cells[(p, N)] = strengthen(cells.get((p, N)), new)
    return [cells[k] for k in sorted(cells)]


# closure ---------------------------------------------------------------------------

def existence_closure(entries: list[CatalogEntry], pmax: int = 12) -> list[CatalogEntry]:
    """Close under exists(q,N) & exists(r,N) => exists(q+r,N).

    The existence set is computed as a fixpoint first, so the result does not
    depend on the order of `entries`.  Every existing cell with a split q + r
    (q <= r, both existing) records the smallest such q as its decomposition;
    derived cells get a union witness when both parts have one.
    """
    cells = {e.key: e for e in entries}
    yes = {k for k, e in cells.items() if exists(e.status)}
    by_n: dict[int, set[int]] = {}
    for p, N in yes:
        by_n.setdefault(N, set()).add(p)
    for N in {e.N for e in entries}:
        have = by_n.setdefault(N, set())
        changed = True
        while changed:
            changed = False
            for q in sorted(have):
                for r in sorted(have):
                    if q + r <= pmax and q + r not in have:
                        have.add(q + r)
                        changed = True
    for N, have in sorted(by_n.items()):
        for p in sorted(have):
            split = next(((q, p - q) for q in range(1, p // 2 + 1) if q in have and p - q in have), None)
            old = cells.get((p, N))
            if old is not None and not_exists(old.status):
                raise CatalogContradiction(
                    f"closure derives PCS_{p}^{N} via {split} but catalog says {old.status} [{old.provenance}]"
                )
            if old is not None and exists(old.status):
                cells[(p, N)] = replace(old, decomposition=split)
                continue
            q, r = split
            a, b = cells[(q, N)].sequences(), cells[(r, N)].sequences()
            if a is not None and b is not None:
                from ..construct import union_families

                derived = CatalogEntry(p, N, EXISTS_WITNESS, union_families(a, b),
                                       f"closure:{q}+{r}", decomposition=split)
            else:
                derived = CatalogEntry(p, N, EXISTS_CITED, None, f"closure:{q}+{r}", decomposition=split)
            cells[(p, N)] = strengthen(old, derived)
    return [cells[k] for k in sorted(cells)]


def load_catalog(pmax: int = 12, nmax: int = 50) -> list[CatalogEntry]:
    return existence_closure(base_facts(pmax, nmax), pmax)


from .table import ExistenceTable, build_table  # noqa: E402

__all__ = [
    "CatalogEntry",
    "ExistenceTable",
    "base_facts",
    "build_table",
    "existence_closure",
    "load_catalog",
    "load_golay26",
    "load_paper_assets",
]
