"""Acceptance gate: nine end-to-end criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import naive_pcs1_exists, naive_pcs2_exists, naive_pcs_classes  # noqa: E402
from pcsds.catalog import LISTED_SDS_FILES, build_table, load_golay26, load_sds_asset  # noqa: E402
from pcsds.catalog.table import ALL, BLANK, BULLET, CIRCLE  # noqa: E402
from pcsds.construct import (  # noqa: E402
    GOLAY_2,
    golay_chain,
    golay_seed,
    union_families,
)
from pcsds.sds import (  # noqa: E402
    ParameterSet,
    ResidueSubset,
    SdsFamily,
    canonicalize,
    check_counting_constraint,
    check_linear_constraint,
    check_quadratic_constraint,
    enumerate_parameter_sets,
    nu,
    pcs_to_sds,
    sds_to_pcs,
    units,
    verify_sds,
)
from pcsds.search import (  # noqa: E402
    EXHAUSTED_NONE,
    FOUND,
    SearchConfig,
    exhaustive_pcs,
    stochastic_sds,
)
from pcsds.seqcore import (  # noqa: E402
    BinarySequence,
    SequenceFamily,
    cyclic_shift,
    is_acs,
    is_pcs,
    nacf,
    negate,
    pacf,
    pacf_from_nacf,
    pacf_sum,
    reverse,
)

GOLDEN = Path(__file__).parent / "golden" / "existence_grid.txt"

LISTED_PARAMETERS = {
    "p3-n36": "(36;15,15,15;18)",
    "p3-n40": "(40;19,18,15;22)",
    "p3-n44": "(44;20,20,17;24)",
    "p3-n48": "(48;24,24,18;30)",
    "p5-n44": "(44;21,20,19,18,17;40)",
    "p5-n48": "(48;23,21,21,20,19;44)",
    "p6-n38": "(38;18,17,16,16,16,14;40)",
    "p6-n42": "(42;19,18,18,18,17,17;44)",
    "p6-n46": "(46;21,21,21,21,21,16;52)",
    "p6-n42-b": "(42;19,18,18,18,17,17;44)",
}

# Documented CI budget and seed for the stochastic N=36 run.
STOCHASTIC_SEED = 0
STOCHASTIC_BUDGET = 50_000_000
PROPERTY_CASES = 10_000

RESULTS: dict[int, tuple[bool, str]] = {}


def _listed():
    return {name: load_sds_asset(name) for name in LISTED_SDS_FILES}


# 1 ------------------------------------------------------------------------------

def criterion_1() -> str:
    t0 = time.perf_counter()
    fams = _listed()
    for name, fam in fams.items():
        rep = verify_sds(fam)
        assert str(fam.parameters) == LISTED_PARAMETERS[name], name
        assert rep.ok and rep.constant and rep.observed_lambda == fam.lam, name
    dt = time.perf_counter() - t0
    assert dt < 1.0, f"took {dt:.3f}s"
    return f"10 families verify with constant profile = lambda in {dt:.3f}s"


# 2 ------------------------------------------------------------------------------

def criterion_2() -> str:
    for fam in _listed().values():
        ps = fam.parameters
        assert check_linear_constraint(ps), ps
        assert check_quadratic_constraint(ps), ps
        assert check_counting_constraint(ps), ps
        # the same three equalities, spelled out
        assert 4 * (sum(ps.k) - ps.lam) == ps.p * ps.N
        assert ps.p * ps.N == sum((ps.N - 2 * k) ** 2 for k in ps.k)
        assert ps.lam * (ps.N - 1) == sum(k * (k - 1) for k in ps.k)
    return "linear, sum-of-squares and counting identities exact for all 10"


# 3 ------------------------------------------------------------------------------

def criterion_3() -> str:
    for fam in _listed().values():
        seqs = sds_to_pcs(fam)
        pN = fam.p * fam.modulus
        assert pacf_sum(seqs) == (pN,) + (0,) * (fam.modulus - 1)
        assert pcs_to_sds(seqs) == fam
    return "pacf sums are [pN,0,...,0] and the round trip is the identity"


# 4 ------------------------------------------------------------------------------

def criterion_4() -> str:
    timings = []

    def timed(p, N):
        t0 = time.perf_counter()
        out = exhaustive_pcs(p, N)
        dt = time.perf_counter() - t0
        assert dt < 60, (p, N, dt)
        timings.append(dt)
        return out

    out = timed(1, 4)
    assert out.status == FOUND and any(is_pcs(sds_to_pcs(w)) for w in out.witnesses)
    assert naive_pcs1_exists(4)
    for N in (8, 12, 16, 20):
        assert timed(1, N).status == EXHAUSTED_NONE, N
        assert not naive_pcs1_exists(N), N
    for N in (6, 12):
        assert enumerate_parameter_sets(2, N) == []
        assert timed(2, N).status == EXHAUSTED_NONE
        assert not naive_pcs2_exists(N), N
    return f"PCS_1^4 found; PCS_1^8,12,16,20 and PCS_2^6,12 empty (max {max(timings):.2f}s per run)"


# 5 ------------------------------------------------------------------------------

def criterion_5() -> str:
    pairs = [(p, N) for p in range(1, 17) for N in range(1, 17) if p * N <= 16]
    for p, N in pairs:
        ours = {tuple(s.elements for s in w.subsets) for w in exhaustive_pcs(p, N).witnesses}
        assert ours == naive_pcs_classes(p, N), (p, N)
    return f"pruned search equals the 2^(pN) filter on all {len(pairs)} (p,N) with pN <= 16"


# 6 ------------------------------------------------------------------------------

def criterion_6() -> str:
    lengths = []
    for seed in (GOLAY_2, golay_seed(10)):
        for g in golay_chain(seed, 50)[1:]:
            rep = is_acs(g.family())
            assert rep.ok and rep.sums == (2 * g.n,) + (0,) * (g.n - 1)
            lengths.append(g.n)
    assert lengths == [4, 8, 16, 32, 20, 40], lengths
    g26 = load_golay26()
    assert g26.n == 26 and is_acs(g26.family())
    return "Golay pairs at 4, 8, 16, 32, 20, 40 by doubling and 26 from the asset verify"


# 7 ------------------------------------------------------------------------------

def criterion_7() -> str:
    table = build_table(12, 50)
    glyph = {"*": BULLET, "o": CIRCLE, ".": BLANK}
    cells = 0
    for line in GOLDEN.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        head, *marks = line.split()
        p = int(head)
        assert len(marks) == 25
        for i, g in enumerate(marks):
            N = 2 * (i + 1)
            assert table.mark(p, N) == glyph[g], (p, N, g, table.mark(p, N))
            cells += 1
    assert cells == 9 * 25
    for p in (4, 8, 12):
        assert all(table.mark(p, N) == ALL for N in range(1, 51))
    return f"all {cells} golden cells match; rows 4, 8, 12 exist for every N <= 50"


# 8 ------------------------------------------------------------------------------

def _rand_seq(rng, n):
    return BinarySequence(tuple(int(v) for v in rng.choice((-1, 1), size=n)))


def _rand_subset(rng, n):
    return ResidueSubset(n, tuple(int(j) for j in np.flatnonzero(rng.random(n) < rng.random())))


def _pcs_pool():
    from pcsds.construct import acs4_catalog, golay_pairs

    pool: dict[int, list[SequenceFamily]] = {}
    for g in golay_pairs(20).values():
        pool.setdefault(g.n, []).append(g.family())
    pool[4].append(SequenceFamily.of("+++-"))
    for n in (3, 5, 6, 7, 9, 12):
        pool.setdefault(n, []).append(acs4_catalog(n).family)
    return pool


def criterion_8() -> str:
    rng = np.random.default_rng(20240601)
    K = PROPERTY_CASES
    for _ in range(K):  # PACF symmetry, factorization through NACF, total sum
        n = int(rng.integers(1, 65))
        a = _rand_seq(rng, n)
        r = pacf(a)
        assert all(r[m] == r[n - m] for m in range(1, n))
        assert r == pacf_from_nacf(nacf(a))
        assert sum(r) == sum(a) ** 2
    for _ in range(K):  # bridge identity and nu symmetry / total
        n = int(rng.integers(1, 65))
        X = _rand_subset(rng, n)
        a = BinarySequence(tuple(-1 if j in X else 1 for j in range(n)))
        r = pacf(a)
        nus = [nu(X, m) for m in range(n)]
        assert all(r[m] == n - 4 * (X.k - nus[m]) for m in range(n))
        assert all(nus[m] == nus[n - m] for m in range(1, n))
        assert sum(nus[1:]) == X.k * (X.k - 1)
    for _ in range(K):  # canonical form is idempotent and a class invariant
        n = int(rng.integers(1, 31))
        subsets = tuple(_rand_subset(rng, n) for _ in range(int(rng.integers(1, 5))))
        f = SdsFamily(n, subsets, 0)
        c = canonicalize(f)
        assert canonicalize(c) == c
        u = int(rng.choice(units(n)))
        shifts = [int(rng.integers(n)) for _ in subsets]
        moved = SdsFamily(n, tuple(
            ResidueSubset.of(n, [(u * x + t) % n for x in s]) for s, t in zip(reversed(subsets), shifts)
        ), 0)
        assert canonicalize(moved) == c
    pool = _pcs_pool()
    lengths = sorted(pool)
    for _ in range(K):  # union additivity of pacf sums over random equivalent PCS pieces
        n = int(rng.choice(lengths))

        def piece():
            fam = pool[n][int(rng.integers(len(pool[n])))]
            out = []
            for a in fam:
                a = cyclic_shift(a, int(rng.integers(n)))
                if rng.random() < 0.5:
                    a = negate(a)
                if rng.random() < 0.5:
                    a = reverse(a)
                out.append(a)
            return SequenceFamily(tuple(out))

        f, g = piece(), piece()
        u = union_families(f, g)
        assert pacf_sum(u) == tuple(x + y for x, y in zip(pacf_sum(f), pacf_sum(g)))
    return f"4 randomized suites x {K} cases, 8 properties, all exact"


# 9 ------------------------------------------------------------------------------

def criterion_9() -> str:
    small = stochastic_sds(ParameterSet.parse("(4;3;2)"),
                           SearchConfig(mode="stochastic", seed=STOCHASTIC_SEED, max_evaluations=1000))
    assert small.status == FOUND and small.stats.evaluations <= 1000
    cfg = SearchConfig(mode="stochastic", seed=STOCHASTIC_SEED, max_evaluations=STOCHASTIC_BUDGET)
    t0 = time.perf_counter()
    big = stochastic_sds(ParameterSet.parse("(36;15,15,15;18)"), cfg)
    dt = time.perf_counter() - t0
    assert big.status == FOUND, f"no witness within {STOCHASTIC_BUDGET} evaluations"
    for w in small.witnesses + big.witnesses:
        assert verify_sds(w).ok and is_pcs(sds_to_pcs(w))
    again = stochastic_sds(ParameterSet.parse("(36;15,15,15;18)"), cfg)
    a = json.dumps(big.to_dict(), sort_keys=True)
    b = json.dumps(again.to_dict(), sort_keys=True)
    assert a == b, "rerun with the same seed differs"
    return (f"(4;3;2) in {small.stats.evaluations} evals; (36;15,15,15;18) seed {STOCHASTIC_SEED} in "
            f"{big.stats.evaluations} evals ({dt:.1f}s, budget {STOCHASTIC_BUDGET}); reruns byte-identical")


CRITERIA = {
    1: ("listed SDS families verify", criterion_1),
    2: ("feasibility identities", criterion_2),
    3: ("SDS <-> PCS equivalence", criterion_3),
    4: ("brute-force nonexistence slices", criterion_4),
    5: ("oracle equivalence pN <= 16", criterion_5),
    6: ("Golay chain", criterion_6),
    7: ("existence table golden match", criterion_7),
    8: ("property suites", criterion_8),
    9: ("stochastic search contract", criterion_9),
}


def run_criterion(n: int) -> tuple[bool, str]:
    title, fn = CRITERIA[n]
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        ok, detail = False, f"assertion failed: {exc}"
    RESULTS[n] = (ok, detail)
    line = f"criterion {n} [{title}]: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, line = run_criterion(n)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
