"""Exhaustive searches: complete up to symmetry, or they refuse.

SDS search fixes each subset to its least translate (so 0 is in every
nonempty subset) and takes subsets of equal size in non-decreasing order.
The remaining unit-multiplier symmetry is removed afterwards by
canonicalizing and de-duplicating the hits.  Per-candidate nu profiles are
precomputed, so extending a partial family is a vector add.
"""

from __future__ import annotations

import time
from dataclasses import replace
from functools import lru_cache
from itertools import combinations
from math import comb, gcd

import numpy as np

from ..construct import BaseSequenceQuad, GolayPair, verify_base
from ..errors import BudgetExceeded, VerificationError
from ..sds import (
    ParameterSet,
    ResidueSubset,
    SdsFamily,
    canonical_key,
    enumerate_parameter_sets,
    least_rotation,
    verify_sds,
)
from ..seqcore import BinarySequence
from . import (
    BUDGET_EXHAUSTED,
    EXHAUSTED_NONE,
    EXHAUSTIVE,
    FOUND,
    ParameterOutcome,
    SearchConfig,
    SearchOutcome,
    SearchStats,
)


@lru_cache(maxsize=256)
def necklace_subsets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """k-subsets of Z_n that are their own least translate, in lex order."""
    if k == 0:
        return ((),)
    out = []
    for rest in combinations(range(1, n), k - 1):
        s = (0,) + rest
        if least_rotation(s, n) == s:
            out.append(s)
    return tuple(out)


def _totient(n: int) -> int:
    return sum(1 for j in range(1, n + 1) if gcd(j, n) == 1)


def necklace_count(n: int, k: int) -> int:
    """Number of rotation classes of k-subsets of Z_n (= len(necklace_subsets(n, k)))."""
    if k == 0 or k == n:
        return 1
    g = gcd(n, k)
    return sum(_totient(d) * comb(n // d, k // d) for d in range(1, g + 1) if g % d == 0) // n


def _profile_matrix(subsets, n: int) -> np.ndarray:
    """Row r holds nu(subsets[r], m) for m = 1..n-1."""
    out = np.zeros((len(subsets), max(n - 1, 0)), dtype=np.int32)
    for r, s in enumerate(subsets):
        members = set(s)
        for m in range(1, n):
            out[r, m - 1] = sum(1 for j in s if (j + m) % n in members)
    return out


def _raw_tree_size(counts: list[int], sizes: tuple[int, ...]) -> int:
    """Nodes of the unpruned tree; runs of equal sizes are drawn as multisets."""
    total = 0
    done = 1
    run = 0
    for i, c in enumerate(counts):
        if i and sizes[i] != sizes[i - 1]:
            done *= comb(counts[i - 1] + run - 1, run)
            run = 0
        run += 1
        total += done * comb(c + run - 1, run)
    return total


def exhaustive_sds(ps: ParameterSet, cfg: SearchConfig | None = None) -> SearchOutcome:
    """Every SDS with parameters `ps`, one per canonical class, or none."""
    cfg = cfg or SearchConfig(mode=EXHAUSTIVE)
    t0 = time.monotonic()
    n, sizes, lam = ps.N, ps.k, ps.lam
    estimate = _raw_tree_size([necklace_count(n, k) for k in sizes], sizes)
    # the candidate tables alone must fit the budget; unpruned runs must fit entirely
    setup = sum(necklace_count(n, k) for k in set(sizes))
    if setup > cfg.max_evaluations or (not cfg.prune and estimate > cfg.max_evaluations):
        raise BudgetExceeded(estimate, cfg.max_evaluations, f"exhaustive {ps}")
    cands = [necklace_subsets(n, k) for k in sizes]
    profs = {k: _profile_matrix(necklace_subsets(n, k), n) for k in set(sizes)}

    stats = SearchStats()
    hits: set[tuple[tuple[int, ...], ...]] = set()
    p = len(sizes)
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit

    def rec(level: int, lo: int, prof: np.ndarray, chosen: list[int]):
        P = profs[sizes[level]]
        children = prof + P[lo:]
        stats.evaluations += len(children)
        if stats.evaluations > cfg.max_evaluations or (deadline and time.monotonic() > deadline):
            raise BudgetExceeded(estimate, cfg.max_evaluations, f"exhaustive {ps}")
        if level == p - 1:
            for idx in np.flatnonzero((children == lam).all(axis=1)):
                picked = chosen + [lo + int(idx)]
                sets = [cands[i][j] for i, j in enumerate(picked)]
                hits.add(canonical_key(sets, n))
            return
        if cfg.prune:
            alive = (children <= lam).all(axis=1)
            stats.prunes += int(len(alive) - alive.sum())
            idxs = np.flatnonzero(alive)
        else:
            idxs = range(len(children))
        same = sizes[level + 1] == sizes[level]
        for idx in idxs:
            j = lo + int(idx)
            rec(level + 1, j if same else 0, children[idx], chosen + [j])

    rec(0, 0, np.zeros(max(n - 1, 0), dtype=np.int32), [])

    witnesses = []
    for key in sorted(hits):
        fam = SdsFamily(n, tuple(ResidueSubset(n, s) for s in key), lam)
        if not verify_sds(fam).ok:
            raise VerificationError(f"search produced an invalid family {key}")
        witnesses.append(fam)
    stats.elapsed = time.monotonic() - t0
    status = FOUND if witnesses else EXHAUSTED_NONE
    return SearchOutcome(
        status, witnesses, stats, cfg, target=str(ps),
        per_parameter=[ParameterOutcome(ps, status, len(witnesses))],
    )


def exhaustive_pcs(p: int, N: int, cfg: SearchConfig | None = None) -> SearchOutcome:
    """All PCS_p^N up to equivalence, as canonical SDS, over every feasible parameter set."""
    cfg = cfg or SearchConfig(mode=EXHAUSTIVE)
    t0 = time.monotonic()
    stats = SearchStats()
    witnesses: list[SdsFamily] = []
    per: list[ParameterOutcome] = []
    for ps in enumerate_parameter_sets(p, N):
        remaining = cfg.max_evaluations - stats.evaluations
        if remaining <= 0:
            raise BudgetExceeded(stats.evaluations, cfg.max_evaluations, f"exhaustive PCS_{p}^{N}")
        out = exhaustive_sds(ps, replace(cfg, max_evaluations=remaining))
        stats.evaluations += out.stats.evaluations
        stats.prunes += out.stats.prunes
        witnesses.extend(out.witnesses)
        per.extend(out.per_parameter)
    stats.elapsed = time.monotonic() - t0
    return SearchOutcome(
        FOUND if witnesses else EXHAUSTED_NONE, witnesses, stats, cfg,
        target=f"PCS_{p}^{N}", per_parameter=per,
    )


# sequence-level exhaustive searches ---------------------------------------------

def _all_sequences(n: int, normalized: bool = True) -> np.ndarray:
    """All +/-1 rows of length n ordered by sign mask; with `normalized`
    only those whose first entry is +1."""
    masks = np.arange(2 ** (n - 1 if normalized else n), dtype=np.int64)
    if normalized:
        masks <<= 1
    bits = (masks[:, None] >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int8)


def _nacf_rows(X: np.ndarray, length: int) -> np.ndarray:
    n = X.shape[1]
    out = np.zeros((X.shape[0], length), dtype=np.int16)
    Xi = X.astype(np.int16)
    for s in range(min(n, length)):
        out[:, s] = (Xi[:, : n - s] * Xi[:, s:]).sum(axis=1)
    return out


def _seq(row: np.ndarray) -> BinarySequence:
    return BinarySequence(tuple(int(v) for v in row))


def exhaustive_golay(n: int) -> list[GolayPair]:
    """All Golay pairs of length n with both first entries +1 (negation removed)."""
    X = _all_sequences(n)
    off = _nacf_rows(X, n)[:, 1:]
    index: dict[bytes, list[int]] = {}
    for j, row in enumerate(off):
        index.setdefault(row.tobytes(), []).append(j)
    pairs = []
    for i, row in enumerate(off):
        for j in index.get((-row).tobytes(), ()):
            pairs.append(GolayPair(_seq(X[i]), _seq(X[j])))
    return pairs


def exhaustive_base(m: int, n: int, cfg: SearchConfig | None = None) -> list[BaseSequenceQuad]:
    """Every BS(m, n) quad (a; b; c; d) with a and c starting with +1.

    Negating any one member preserves the base-sequence property; fixing the
    signs of a and c keeps the output small while b and d stay free.
    """
    cfg = cfg or SearchConfig(mode=EXHAUSTIVE)
    if m < 1 or n < 1:
        raise ValueError("base sequence lengths must be >= 1")
    length = max(m, n)
    A, Bs = _all_sequences(m), _all_sequences(m, normalized=False)
    C, Ds = _all_sequences(n), _all_sequences(n, normalized=False)
    estimate = len(A) * len(Bs) + len(C) * len(Ds)
    if estimate > cfg.max_evaluations:
        raise BudgetExceeded(estimate, cfg.max_evaluations, f"exhaustive BS({m},{n})")
    NA, NB = _nacf_rows(A, length)[:, 1:], _nacf_rows(Bs, length)[:, 1:]
    NC, ND = _nacf_rows(C, length)[:, 1:], _nacf_rows(Ds, length)[:, 1:]
    cd = (NC[:, None, :] + ND[None, :, :]).reshape(len(C) * len(Ds), length - 1)
    index: dict[bytes, list[int]] = {}
    for r, row in enumerate(cd):
        index.setdefault((-row).tobytes(), []).append(r)
    quads = []
    for i in range(len(A)):
        ab = NA[i][None, :] + NB
        for j, row in enumerate(ab):
            for r in index.get(row.tobytes(), ()):
                k, l = divmod(r, len(Ds))
                q = BaseSequenceQuad(_seq(A[i]), _seq(Bs[j]), _seq(C[k]), _seq(Ds[l]))
                if not verify_base(q):
                    raise VerificationError(f"search produced an invalid quad {q}")
                quads.append(q)
    return quads
