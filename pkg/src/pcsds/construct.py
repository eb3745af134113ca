"""Constructions of complementary families from smaller pieces.

Everything built here is re-verified before it is returned: a construction
that fails its own check raises `VerificationError` instead of handing back
a family that merely ought to work.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import VerificationError
from .seqcore import (
    APERIODIC,
    BinarySequence,
    CorrelationReport,
    SequenceFamily,
    delta_report,
    is_acs,
    is_pcs,
    nacf,
)

ACS4_MAX_N = 72


@dataclass(frozen=True)
class BaseSequenceQuad:
    """(a; b; c; d) with |a| = |b| = m and |c| = |d| = n."""

    a: BinarySequence
    b: BinarySequence
    c: BinarySequence
    d: BinarySequence

    def __post_init__(self):
        if len(self.a) != len(self.b) or len(self.c) != len(self.d):
            raise ValueError(
                f"base quad lengths must be (m, m, n, n); got "
                f"{[len(s) for s in (self.a, self.b, self.c, self.d)]}"
            )

    @classmethod
    def of(cls, a: str, b: str, c: str, d: str) -> "BaseSequenceQuad":
        return cls(*(BinarySequence.from_string(s) for s in (a, b, c, d)))

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.c)

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __str__(self) -> str:
        return ";".join(str(s) for s in self)


def verify_base(quad: BaseSequenceQuad) -> CorrelationReport:
    """NACF sum of the four sequences, shorter ones zero-padded past their end."""
    length = max(quad.m, quad.n)
    return delta_report(APERIODIC, [nacf(s) for s in quad], length)


def base_to_acs4(quad: BaseSequenceQuad) -> SequenceFamily:
    """(a; b; c; d) -> (a,c; a,-c; b,d; b,-d), an ACS of 4 sequences of length m+n."""
    rep = verify_base(quad)
    if not rep:
        raise VerificationError(f"not base sequences: {rep.describe()}")
    a, b, c, d = quad
    fam = SequenceFamily((a + c, a + (-c), b + d, b + (-d)))
    _require(is_acs(fam), "base_to_acs4 output")
    return fam


@dataclass(frozen=True)
class GolayPair:
    a: BinarySequence
    b: BinarySequence

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("Golay pair members must have equal length")
        rep = is_acs(self.family())
        if not rep:
            raise VerificationError(f"not a Golay pair: {rep.describe()}")

    @classmethod
    def of(cls, a: str, b: str) -> "GolayPair":
        return cls(BinarySequence.from_string(a), BinarySequence.from_string(b))

    @property
    def n(self) -> int:
        return len(self.a)

    def family(self) -> SequenceFamily:
        return SequenceFamily((self.a, self.b))


def golay_double(g: GolayPair) -> GolayPair:
    """(a, b) -> (a|b, a|-b); the constructor re-checks the result."""
    return GolayPair(g.a + g.b, g.a + (-g.b))


def union_families(f: SequenceFamily, g: SequenceFamily) -> SequenceFamily:
    if f.n != g.n:
        raise ValueError(f"length mismatch: {f.n} vs {g.n}")
    for name, fam in (("first", f), ("second", g)):
        rep = is_pcs(fam)
        if not rep:
            raise VerificationError(f"{name} family is not a PCS: {rep.describe()}")
    out = SequenceFamily(f.members + g.members)
    _require(is_pcs(out), "union")
    return out


def _require(rep: CorrelationReport, what: str):
    if not rep:
        raise VerificationError(f"{what} failed re-verification: {rep.describe()}")


# Golay seeds --------------------------------------------------------------------

GOLAY_1 = GolayPair.of("+", "+")
GOLAY_2 = GolayPair.of("++", "+-")


@lru_cache(maxsize=None)
def golay_seed(n: int) -> GolayPair:
    """Primitive seeds: 1 and 2 built in, 10 by exhaustive search, 26 from the catalog asset."""
    if n == 1:
        return GOLAY_1
    if n == 2:
        return GOLAY_2
    if n == 10:
        from .search.exhaustive import exhaustive_golay

        return exhaustive_golay(10)[0]
    if n == 26:
        from .catalog import load_golay26

        return load_golay26()
    raise ValueError(f"no primitive Golay seed of length {n}")


def golay_chain(seed: GolayPair, limit: int) -> list[GolayPair]:
    """seed, double(seed), ... up to length `limit`."""
    out = [seed]
    while out[-1].n * 2 <= limit:
        out.append(golay_double(out[-1]))
    return out


@lru_cache(maxsize=None)
def golay_pairs(limit: int = 2 * ACS4_MAX_N) -> dict[int, GolayPair]:
    """Every Golay pair reachable from the seeds by doubling, keyed by length."""
    out: dict[int, GolayPair] = {}
    for s in (1, 2, 10, 26):
        for g in golay_chain(golay_seed(s), limit):
            out.setdefault(g.n, g)
    return dict(sorted(out.items()))


# ACS_4 catalog --------------------------------------------------------------------

@dataclass(frozen=True)
class Acs4Entry:
    N: int
    family: SequenceFamily | None
    provenance: str

    @property
    def has_witness(self) -> bool:
        return self.family is not None


ACS4_CITATION = "p divisible by 4 and N <= 72 (base sequences BS(n+1,n), n <= 35, plus doubling)"


@lru_cache(maxsize=None)
def _acs4_witnesses(small_base_limit: int) -> dict[int, tuple[SequenceFamily, str]]:
    """Witnesses from small exhaustive base sequences, Golay pairs, and doubling.

    For each N the first applicable route wins: doubling ACS_4^{N/2} (as
    BS(N/2, N/2)), two copies of a Golay pair, then an exhaustively found
    BS(ceil(N/2), floor(N/2)) when N <= small_base_limit.
    """
    from .search import SearchConfig
    from .search.exhaustive import exhaustive_base

    golay = golay_pairs(ACS4_MAX_N)
    found: dict[int, tuple[SequenceFamily, str]] = {
        1: (SequenceFamily.of("+", "+", "+", "-"), "built-in (+;+;+;-)")
    }
    for N in range(2, ACS4_MAX_N + 1):
        fam = how = None
        if N % 2 == 0 and N // 2 in found:
            a, b, c, d = found[N // 2][0]
            fam = base_to_acs4(BaseSequenceQuad(a, b, c, d))
            how = f"doubling of ACS_4^{N // 2}"
        elif N in golay:
            g = golay[N]
            fam = SequenceFamily((g.a, g.b, g.a, g.b))
            how = f"two copies of the Golay pair of length {N}"
        elif N <= small_base_limit:
            m, n = (N + 1) // 2, N // 2
            quads = exhaustive_base(m, n, SearchConfig(mode="exhaustive"))
            if quads:
                fam = base_to_acs4(quads[0])
                how = f"exhaustive BS({m},{n})"
        if fam is not None:
            _require(is_acs(fam), f"ACS_4^{N} via {how}")
            found[N] = (fam, how)
    return found


def acs4_catalog(N: int, small_base_limit: int = 15) -> Acs4Entry:
    """A verified ACS_4^N when derivable from materialized pieces, else a cited fact."""
    if not 1 <= N <= ACS4_MAX_N:
        raise ValueError(f"N must be in 1..{ACS4_MAX_N}, got {N}")
    hit = _acs4_witnesses(small_base_limit).get(N)
    if hit is None:
        return Acs4Entry(N, None, f"exists (cited): {ACS4_CITATION}")
    return Acs4Entry(N, hit[0], hit[1])
