"""Binary sequences and their periodic / aperiodic autocorrelations.

All correlation arithmetic is exact integer arithmetic.  A correlation value
of a length-N sequence is bounded by N in absolute value and a family sum by
p*N, so for the sizes handled here (p <= 12, N <= a few hundred) everything
fits comfortably in a machine word; Python ints are used regardless.

Sequences are stored twice: as a tuple of +1/-1 entries and as a bit mask
with bit j set iff a(j) == -1.  The mask drives the popcount kernels
`pacf` / `nacf`; `pacf_direct` / `nacf_direct` are the literal O(N^2)
definitions kept as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ParseError

PERIODIC = "periodic"
APERIODIC = "aperiodic"


@dataclass(frozen=True)
class BinarySequence:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise ValueError("binary sequence must have length >= 1")
        if any(v not in (1, -1) for v in vals):
            raise ValueError(f"entries must be +1 or -1, got {vals}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_string(cls, s: str) -> "BinarySequence":
        s = s.strip()
        bad = set(s) - {"+", "-"}
        if bad or not s:
            raise ParseError(f"not a +/- sequence: {s!r}")
        return cls(tuple(1 if c == "+" else -1 for c in s))

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "BinarySequence":
        return cls(tuple(-1 if (mask >> j) & 1 else 1 for j in range(n)))

    @cached_property
    def mask(self) -> int:
        m = 0
        for j, v in enumerate(self.values):
            if v < 0:
                m |= 1 << j
        return m

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __str__(self) -> str:
        return "".join("+" if v > 0 else "-" for v in self.values)

    def __neg__(self) -> "BinarySequence":
        return negate(self)

    def __add__(self, other: "BinarySequence") -> "BinarySequence":
        """Concatenation."""
        return BinarySequence(self.values + other.values)


@dataclass(frozen=True)
class CorrelationVector:
    kind: str
    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __add__(self, other: "CorrelationVector") -> "CorrelationVector":
        if self.kind != other.kind or len(self) != len(other):
            raise ValueError("can only add correlation vectors of the same kind and length")
        return CorrelationVector(self.kind, tuple(x + y for x, y in zip(self, other)))


@dataclass(frozen=True)
class SequenceFamily:
    members: tuple[BinarySequence, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a sequence family needs at least one member")
        lengths = {len(a) for a in members}
        if len(lengths) != 1:
            raise ValueError(f"family members differ in length: {sorted(lengths)}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *seqs: str | BinarySequence) -> "SequenceFamily":
        return cls(tuple(s if isinstance(s, BinarySequence) else BinarySequence.from_string(s) for s in seqs))

    @property
    def n(self) -> int:
        return len(self.members[0])

    @property
    def p(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[BinarySequence]:
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


# correlation kernels ---------------------------------------------------------

def pacf(a: BinarySequence) -> CorrelationVector:
    """Periodic autocorrelation via XOR/popcount on the sign mask."""
    n = len(a)
    m = a.mask
    full = (1 << n) - 1
    out = [n]
    for i in range(1, n):
        rot = ((m >> i) | (m << (n - i))) & full
        out.append(n - 2 * (m ^ rot).bit_count())
    return CorrelationVector(PERIODIC, tuple(out))


def nacf(a: BinarySequence) -> CorrelationVector:
    """Aperiodic autocorrelation; shifts >= N are implicitly zero."""
    n = len(a)
    m = a.mask
    out = [n]
    for i in range(1, n):
        window = (1 << (n - i)) - 1
        out.append((n - i) - 2 * ((m ^ (m >> i)) & window).bit_count())
    return CorrelationVector(APERIODIC, tuple(out))


def pacf_direct(a: BinarySequence) -> CorrelationVector:
    n = len(a)
    v = a.values
    return CorrelationVector(
        PERIODIC, tuple(sum(v[j] * v[(i + j) % n] for j in range(n)) for i in range(n))
    )


def nacf_direct(a: BinarySequence) -> CorrelationVector:
    n = len(a)
    v = a.values
    return CorrelationVector(
        APERIODIC, tuple(sum(v[j] * v[i + j] for j in range(n - i)) for i in range(n))
    )


def pacf_from_nacf(phi: CorrelationVector) -> CorrelationVector:
    """Fold an aperiodic correlation into the periodic one: phi[i] + phi[N-i]."""
    if phi.kind != APERIODIC:
        raise ValueError("expected an aperiodic correlation vector")
    n = len(phi)
    return CorrelationVector(
        PERIODIC, (phi[0],) + tuple(phi[i] + phi[n - i] for i in range(1, n))
    )


def _padded_sum(vectors: Sequence[CorrelationVector], length: int) -> tuple[int, ...]:
    total = [0] * length
    for vec in vectors:
        for i, x in enumerate(vec.values[:length]):
            total[i] += x
    return tuple(total)


@dataclass(frozen=True)
class CorrelationReport:
    """Outcome of a delta-function test on a sum of correlations."""

    kind: str
    sums: tuple[int, ...]
    offending: tuple[tuple[int, int], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.offending

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first_offending_shift(self) -> int | None:
        return self.offending[0][0] if self.offending else None

    def describe(self) -> str:
        if self.ok:
            return f"{self.kind} sum is a delta-function (peak {self.sums[0]})"
        shown = ", ".join(f"shift {s}: {r}" for s, r in self.offending[:8])
        more = "" if len(self.offending) <= 8 else f" (+{len(self.offending) - 8} more)"
        return f"{self.kind} sum not a delta-function: {shown}{more}"


def delta_report(kind: str, vectors: Sequence[CorrelationVector], length: int) -> CorrelationReport:
    sums = _padded_sum(vectors, length)
    bad = tuple((i, s) for i, s in enumerate(sums) if i > 0 and s != 0)
    return CorrelationReport(kind, sums, bad)


def pacf_sum(f: SequenceFamily) -> tuple[int, ...]:
    return _padded_sum([pacf(a) for a in f], f.n)


def is_pcs(f: SequenceFamily) -> CorrelationReport:
    """Periodic complementary test; the report is truthy iff it passes."""
    return delta_report(PERIODIC, [pacf(a) for a in f], f.n)


def is_acs(f: SequenceFamily) -> CorrelationReport:
    """Aperiodic complementary test; the report is truthy iff it passes."""
    return delta_report(APERIODIC, [nacf(a) for a in f], f.n)


# equivalence moves -----------------------------------------------------------

def negate(a: BinarySequence) -> BinarySequence:
    return BinarySequence(tuple(-v for v in a.values))


def reverse(a: BinarySequence) -> BinarySequence:
    return BinarySequence(a.values[::-1])


def cyclic_shift(a: BinarySequence, s: int) -> BinarySequence:
    """Rotate right by s: entry j of the result is a((j - s) mod N)."""
    n = len(a)
    if not 0 <= s < n:
        raise ValueError(f"shift {s} out of range for length {n}")
    return BinarySequence(a.values[n - s:] + a.values[: n - s])


# text encoding ---------------------------------------------------------------

def format_family(f: Iterable[BinarySequence], header: str | None = None) -> str:
    lines = [] if header is None else [header if header.startswith("#") else "# " + header]
    lines.extend(str(a) for a in f)
    return "\n".join(lines) + "\n"


def parse_family_text(text: str) -> tuple[list[str], SequenceFamily]:
    """Parse the +/- family format; returns (comment lines, family)."""
    comments: list[str] = []
    seqs: list[BinarySequence] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if seqs:
                raise ParseError(f"line {lineno}: comment after sequence data")
            comments.append(line)
            continue
        try:
            seqs.append(BinarySequence.from_string(line))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not seqs:
        raise ParseError("no sequences found")
    try:
        return comments, SequenceFamily(tuple(seqs))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
