"""Supplementary difference sets over Z_N and their link to PCS families.

A family X_1..X_p of subsets of Z_N is an SDS with parameters
(N; k_1..k_p; lambda) when every nonzero residue m is hit exactly lambda
times by ordered differences i - j (i, j in the same X_i).  Replacing each
subset by the +/-1 sequence that is -1 exactly on the subset turns SDS with
4(sum k - lambda) = pN into periodic complementary families and back, by

    pacf(a)[m] = N - 4 (k - nu(X, m)).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import InfeasibleParameters, VerificationError
from .seqcore import BinarySequence, SequenceFamily, is_pcs


@dataclass(frozen=True, order=True)
class ResidueSubset:
    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if any(not 0 <= e < self.modulus for e in els):
            raise ValueError(f"elements {els} out of range for Z_{self.modulus}")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError(f"elements must be strictly increasing: {els}")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, modulus: int, elements: Iterable[int]) -> "ResidueSubset":
        els = list(elements)
        if len(set(els)) != len(els):
            raise ValueError(f"duplicate elements in {els}")
        return cls(modulus, tuple(sorted(els)))

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def mask(self) -> int:
        m = 0
        for e in self.elements:
            m |= 1 << e
        return m

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements


@dataclass(frozen=True)
class SdsFamily:
    modulus: int
    subsets: tuple[ResidueSubset, ...]
    lam: int
    name: str | None = field(default=None, compare=False)
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        subsets = tuple(self.subsets)
        if not subsets:
            raise ValueError("an SDS family needs at least one subset")
        if any(s.modulus != self.modulus for s in subsets):
            raise ValueError("all subsets must share the family modulus")
        if self.lam < 0:
            raise ValueError(f"lambda must be non-negative, got {self.lam}")
        object.__setattr__(self, "subsets", subsets)

    @classmethod
    def from_lists(cls, modulus: int, sets: Iterable[Iterable[int]], lam: int, **kw) -> "SdsFamily":
        return cls(modulus, tuple(ResidueSubset.of(modulus, s) for s in sets), lam, **kw)

    @property
    def p(self) -> int:
        return len(self.subsets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(s.k for s in self.subsets)

    @property
    def parameters(self) -> "ParameterSet":
        return ParameterSet.of(self.modulus, self.sizes, self.lam)

    def as_lists(self) -> list[list[int]]:
        return [list(s.elements) for s in self.subsets]


@dataclass(frozen=True, order=True)
class ParameterSet:
    N: int
    k: tuple[int, ...]
    lam: int

    def __post_init__(self):
        ks = tuple(sorted((int(x) for x in self.k), reverse=True))
        if not ks:
            raise ValueError("parameter set needs at least one block size")
        if any(not 0 <= x <= self.N for x in ks):
            raise ValueError(f"block sizes {ks} out of range 0..{self.N}")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")
        object.__setattr__(self, "k", ks)

    @classmethod
    def of(cls, N: int, k: Iterable[int], lam: int) -> "ParameterSet":
        return cls(N, tuple(k), lam)

    @classmethod
    def parse(cls, text: str) -> "ParameterSet":
        """Parse ``(N;k1,...,kp;lambda)``."""
        body = text.strip().lstrip("(").rstrip(")")
        try:
            n, ks, lam = body.split(";")
            return cls(int(n), tuple(int(x) for x in ks.split(",")), int(lam))
        except ValueError as exc:
            raise ValueError(f"bad parameter set {text!r}: {exc}") from None

    @property
    def p(self) -> int:
        return len(self.k)

    def __str__(self) -> str:
        return f"({self.N};{','.join(map(str, self.k))};{self.lam})"


# difference counts -------------------------------------------------------------

def nu(X: ResidueSubset, m: int) -> int:
    """Number of ordered pairs (i, j) in X x X with i - j = m (mod N)."""
    n = X.modulus
    if not 0 <= m < n:
        raise ValueError(f"residue {m} out of range for Z_{n}")
    members = set(X.elements)
    return sum(1 for j in X.elements if (j + m) % n in members)


def nu_profile(X: ResidueSubset) -> list[int]:
    """[nu(X, m) for m in 0..N-1] via popcounts of the rotated membership mask."""
    n = X.modulus
    mask = X.mask
    full = (1 << n) - 1
    out = [X.k]
    for m in range(1, n):
        rot = ((mask >> m) | (mask << (n - m))) & full
        out.append((mask & rot).bit_count())
    return out


def difference_profile(f: SdsFamily) -> tuple[int, ...]:
    """Summed nu over the family at m = 1..N-1 (empty for the degenerate N = 1)."""
    total = [0] * (f.modulus - 1)
    for X in f.subsets:
        for m, c in enumerate(nu_profile(X)[1:]):
            total[m] += c
    return tuple(total)


# feasibility identities --------------------------------------------------------

def check_linear_constraint(ps: ParameterSet) -> bool:
    return 4 * (sum(ps.k) - ps.lam) == ps.p * ps.N


def check_quadratic_constraint(ps: ParameterSet) -> bool:
    return ps.p * ps.N == sum((ps.N - 2 * k) ** 2 for k in ps.k)


def check_counting_constraint(ps: ParameterSet) -> bool:
    if ps.N < 2:
        raise ValueError("counting identity is undefined for N = 1")
    return ps.lam * (ps.N - 1) == sum(k * (k - 1) for k in ps.k)


def is_feasible(ps: ParameterSet) -> bool:
    """All three necessary identities; N = 1 is degenerate and always feasible."""
    if ps.N == 1:
        return True
    return (
        check_linear_constraint(ps)
        and check_quadratic_constraint(ps)
        and check_counting_constraint(ps)
    )


def enumerate_parameter_sets(p: int, N: int) -> list[ParameterSet]:
    """Every (k_1 >= ... >= k_p; lambda) passing the three identities.

    lambda is pinned by the linear identity, and the sum-of-squares identity
    bounds the partial sums, so the recursion never visits the full grid.
    For N = 1 there is no nonzero residue; every size vector is returned with
    lambda = 0.
    """
    if p < 1 or N < 1:
        raise ValueError("need p >= 1 and N >= 1")
    if N == 1:
        return [ParameterSet(1, (1,) * j + (0,) * (p - j), 0) for j in range(p + 1)]
    target = p * N
    if target % 4:
        return []
    out: list[ParameterSet] = []

    def rec(prefix: list[int], budget: int):
        if len(prefix) == p:
            if budget != 0:
                return
            lam = sum(prefix) - target // 4
            if lam < 0:
                return
            ps = ParameterSet(N, tuple(prefix), lam)
            if is_feasible(ps):
                out.append(ps)
            return
        top = prefix[-1] if prefix else N
        for k in range(top, -1, -1):
            sq = (N - 2 * k) ** 2
            if sq <= budget:
                rec(prefix + [k], budget - sq)

    rec([], target)
    return sorted(out)


# verification ------------------------------------------------------------------

@dataclass(frozen=True)
class SdsReport:
    profile: tuple[int, ...]
    sizes: tuple[int, ...]
    declared_lambda: int
    linear: bool
    quadratic: bool
    counting: bool | None

    @property
    def degenerate(self) -> bool:
        return not self.profile

    @property
    def constant(self) -> bool:
        return len(set(self.profile)) <= 1

    @property
    def observed_lambda(self) -> int | None:
        if self.degenerate:
            return 0
        return self.profile[0] if self.constant else None

    @property
    def ok(self) -> bool:
        if self.degenerate:
            return True
        return self.constant and self.observed_lambda == self.declared_lambda

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.degenerate:
            return "degenerate (N = 1): no nonzero differences"
        if self.constant:
            head = f"constant profile {self.profile[0]}"
            if self.observed_lambda != self.declared_lambda:
                head += f" but declared lambda {self.declared_lambda}"
        else:
            bad = [(m + 1, v) for m, v in enumerate(self.profile) if v != self.declared_lambda]
            shown = ", ".join(f"m={m}: {v}" for m, v in bad[:8])
            head = f"non-constant profile (declared lambda {self.declared_lambda}); {shown}"
        ids = f"linear={self.linear} quadratic={self.quadratic} counting={self.counting}"
        return f"{head}; k={','.join(map(str, self.sizes))}; {ids}"


def verify_sds(f: SdsFamily) -> SdsReport:
    """Recompute the difference profile; the declared lambda is only compared."""
    prof = difference_profile(f)
    ps = f.parameters
    return SdsReport(
        profile=prof,
        sizes=f.sizes,
        declared_lambda=f.lam,
        linear=check_linear_constraint(ps),
        quadratic=check_quadratic_constraint(ps),
        counting=check_counting_constraint(ps) if f.modulus > 1 else None,
    )


# SDS <-> PCS ---------------------------------------------------------------------

def sds_to_pcs(f: SdsFamily) -> SequenceFamily:
    """Sequences that are -1 exactly on each subset.

    Only valid when the family verifies and 4(sum k - lambda) = pN; without
    the linear identity the result is not complementary.
    """
    rep = verify_sds(f)
    if not rep.ok:
        raise VerificationError(f"not an SDS with lambda={f.lam}: {rep.describe()}")
    if f.modulus > 1 and not rep.linear:
        raise VerificationError(
            f"parameters {f.parameters} violate 4(sum k - lambda) = pN; no PCS correspondence"
        )
    n = f.modulus
    members = []
    for X in f.subsets:
        s = set(X.elements)
        members.append(BinarySequence(tuple(-1 if j in s else 1 for j in range(n))))
    return SequenceFamily(tuple(members))


def pcs_to_sds(f: SequenceFamily) -> SdsFamily:
    """Inverse of `sds_to_pcs`; lambda = sum k - pN/4."""
    rep = is_pcs(f)
    if not rep.ok:
        raise VerificationError(f"input is not a PCS: {rep.describe()}")
    n = f.n
    subsets = tuple(
        ResidueSubset(n, tuple(j for j, v in enumerate(a) if v < 0)) for a in f
    )
    if n == 1:
        lam = 0
    else:
        lam = sum(s.k for s in subsets) - (f.p * n) // 4
    out = SdsFamily(n, subsets, lam)
    if not verify_sds(out).ok:
        raise VerificationError("extracted family failed verification")
    return out


# canonical form ------------------------------------------------------------------

def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [u for u in range(1, n) if gcd(u, n) == 1]


def least_rotation(elements: Sequence[int], n: int) -> tuple[int, ...]:
    """Lexicographically least translate of a subset of Z_n."""
    if not elements:
        return ()
    return min(tuple(sorted((x - t) % n for x in elements)) for t in set(elements))


def _normal(sets: Iterable[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    rots = [least_rotation(s, n) for s in sets]
    return tuple(sorted(rots, key=lambda s: (-len(s), s)))


def canonical_key(sets: Iterable[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical representative (as nested tuples) under translations of each
    subset, a common unit multiplier, and reordering of the subsets."""
    sets = [tuple(s) for s in sets]
    return min(_normal([[(u * x) % n for x in s] for s in sets], n) for u in units(n))


def canonicalize(f: SdsFamily) -> SdsFamily:
    key = canonical_key((s.elements for s in f.subsets), f.modulus)
    return replace(
        f, subsets=tuple(ResidueSubset(f.modulus, s) for s in key)
    )
