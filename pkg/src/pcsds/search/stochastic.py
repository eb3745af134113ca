"""Steady-state genetic search for SDS with a tabu local-improvement step.

Genome: one 0/1 membership vector per subset, sizes fixed by the parameter
set.  Mutation swaps one member out and one non-member in, crossover hands
whole subsets from one parent to the child, parents are picked by binary
tournament.  Every child is then improved by a tabu steepest-descent walk
over the same swap moves; a whole stagnant population is reseeded (keeping
its best individual) after `restart_after` generations without progress.

Fitness is sum_{m=1}^{N/2} (profile(m) - lambda)^2.  The profile is
symmetric (nu(X, m) = nu(X, N - m)), so half the residues suffice and the
fitness is zero exactly when the family is an SDS.

All randomness flows through numpy Generators derived from the config seed;
islands get spawned child seeds and run one after another, each capped at
the generation where an earlier island already succeeded, which gives the
same winner (first by generation, then island index) as a parallel run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import InfeasibleParameters, VerificationError
from ..sds import ParameterSet, ResidueSubset, SdsFamily, difference_profile, is_feasible, verify_sds
from . import BUDGET_EXHAUSTED, FOUND, STOCHASTIC, SearchConfig, SearchOutcome, SearchStats

ProgressFn = Callable[[int, int], None]


def fitness(profile, lam: int) -> int:
    """Half-profile squared deviation; `profile` is indexed m = 1..N-1."""
    half = (len(profile) + 1) // 2
    return int(sum((int(v) - lam) ** 2 for v in profile[:half]))


def family_fitness(f: SdsFamily) -> int:
    return fitness(difference_profile(f), f.lam)


class _Budget(Exception):
    pass


@dataclass
class _Individual:
    xs: np.ndarray  # (p, N) int8 membership
    prof: np.ndarray  # (N,) nu sums, index 0 unused
    fit: int


class _Island:
    def __init__(self, ps: ParameterSet, cfg: SearchConfig, rng: np.random.Generator,
                 budget: int, deadline: float | None, progress: ProgressFn | None,
                 stats: SearchStats):
        self.ps, self.cfg, self.rng = ps, cfg, rng
        self.n = ps.N
        self.half = self.n // 2
        self.ar = np.arange(self.n)
        self.shift_idx = (self.ar[None, :] + self.ar[:, None]) % self.n  # [m, j] -> j + m
        self.budget = budget
        self.deadline = deadline
        self.progress = progress
        self.stats = stats
        self.evals = 0
        self.best_fit: int | None = None
        self._next_report = cfg.progress_interval or None

    # bookkeeping ------------------------------------------------------------

    def _spend(self, k: int, fit: int, check: bool = True):
        self.evals += k
        self.stats.evaluations += k
        if self.best_fit is None or fit < self.best_fit:
            self.best_fit = fit
        if self.stats.best_fitness is None or fit < self.stats.best_fitness:
            self.stats.best_fitness = fit
        if self._next_report is not None and self.stats.evaluations >= self._next_report:
            if self.progress is not None:
                self.progress(self.stats.evaluations, self.stats.best_fitness)
            while self._next_report <= self.stats.evaluations:
                self._next_report += self.cfg.progress_interval
        if check and (self.evals >= self.budget or (self.deadline and time.monotonic() > self.deadline)):
            raise _Budget

    def _fit(self, prof: np.ndarray) -> int:
        d = prof[1 : self.half + 1] - self.ps.lam
        return int((d * d).sum())

    def _profile(self, xs: np.ndarray) -> np.ndarray:
        x = xs.astype(np.int32)
        return (x[:, None, :] * x[:, self.shift_idx]).sum(axis=(0, 2))

    def evaluate(self, xs: np.ndarray) -> _Individual:
        prof = self._profile(xs)
        fit = self._fit(prof)
        self._spend(1, fit, check=fit != 0)
        return _Individual(xs, prof, fit)

    # operators --------------------------------------------------------------

    def random_individual(self) -> _Individual:
        xs = np.zeros((self.ps.p, self.n), dtype=np.int8)
        for i, k in enumerate(self.ps.k):
            xs[i, self.rng.choice(self.n, size=k, replace=False)] = 1
        return self.evaluate(xs)

    def mutate(self, xs: np.ndarray):
        for i in range(len(xs)):
            if self.rng.random() < self.cfg.mutation_rate:
                ins, outs = np.flatnonzero(xs[i]), np.flatnonzero(xs[i] == 0)
                if len(ins) and len(outs):
                    xs[i, self.rng.choice(ins)] = 0
                    xs[i, self.rng.choice(outs)] = 1

    def crossover(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        child = a.copy()
        if self.rng.random() < self.cfg.crossover_rate:
            take = self.rng.random(len(a)) < 0.5
            child[take] = b[take]
        return child

    def tournament(self, pop: list[_Individual]) -> _Individual:
        i, j = self.rng.integers(len(pop), size=2)
        return pop[i] if pop[i].fit <= pop[j].fit else pop[j]

    # local search -----------------------------------------------------------

    def _move_table(self, x: np.ndarray, R: np.ndarray):
        """Fitness after every (remove u, add v) swap in one subset."""
        n, half = self.n, self.half
        ins, outs = np.flatnonzero(x), np.flatnonzero(x == 0)
        if not len(ins) or not len(outs):
            return ins, outs, None
        cols = self.ar[1 : half + 1]
        xi = x.astype(np.int32)
        D = xi[(ins[:, None] - cols) % n] + xi[(ins[:, None] + cols) % n]
        A = xi[(outs[:, None] - cols) % n] + xi[(outs[:, None] + cols) % n]
        new = R[None, None, :] - D[:, None, :] + A[None, :, :]
        d = (outs[None, :] - ins[:, None]) % n
        col = np.minimum(d, n - d)
        ii, jj = np.indices(col.shape)
        new[ii, jj, col - 1] -= np.where(2 * d == n, 2, 1)
        return ins, outs, (new * new).sum(axis=2)

    def local_search(self, ind: _Individual) -> _Individual:
        xs = ind.xs.copy()
        prof = ind.prof.copy()
        fit = ind.fit
        best = _Individual(xs.copy(), prof.copy(), fit)
        lo, hi = self.cfg.tabu_tenure
        tabu = np.zeros(xs.shape, dtype=np.int64)
        lam = self.ps.lam
        for step in range(1, self.cfg.local_steps + 1):
            if fit == 0:
                break
            R = (prof[1 : self.half + 1] - lam).astype(np.int64)
            best_val = None
            moves: list[tuple[int, int, int]] = []
            spent = 0
            for i in range(len(xs)):
                ins, outs, table = self._move_table(xs[i], R)
                if table is None:
                    continue
                spent += table.size
                allowed = tabu[i, outs] <= step
                table = np.where(allowed[None, :] | (table == 0), table, np.iinfo(np.int64).max)
                m = int(table.min())
                if best_val is None or m < best_val:
                    best_val, moves = m, []
                if m == best_val:
                    moves += [(i, int(ins[a]), int(outs[b])) for a, b in zip(*np.nonzero(table == m))]
            if best_val is None or not moves:
                break
            i, u, v = moves[self.rng.integers(len(moves))]
            x = xs[i].astype(np.int32)
            prof -= (x * x[self.shift_idx]).sum(axis=1)
            xs[i, u], xs[i, v] = 0, 1
            x = xs[i].astype(np.int32)
            prof += (x * x[self.shift_idx]).sum(axis=1)
            fit = self._fit(prof)
            tabu[i, u] = step + int(self.rng.integers(lo, hi + 1))
            if fit < best.fit:
                best = _Individual(xs.copy(), prof.copy(), fit)
            self._spend(spent, fit, check=fit != 0)
        return best

    # driver -----------------------------------------------------------------

    def run(self, gen_cap: int | None) -> tuple[_Individual | None, int]:
        """Returns (solution or None, generation at which it was found / reached)."""
        pop: list[_Individual] = []
        try:
            for _ in range(self.cfg.population):
                ind = self.random_individual()
                if ind.fit == 0:
                    return ind, 0
                pop.append(ind)
            gen = 0
            best_fit = min(p.fit for p in pop)
            last_gain = 0
            while gen_cap is None or gen + 1 < gen_cap:
                gen += 1
                self.stats.generations += 1
                a, b = self.tournament(pop), self.tournament(pop)
                xs = self.crossover(a.xs, b.xs)
                self.mutate(xs)
                child = self.local_search(self.evaluate(xs))
                if child.fit == 0:
                    return child, gen
                worst = max(range(len(pop)), key=lambda j: pop[j].fit)
                if child.fit <= pop[worst].fit:
                    pop[worst] = child
                if child.fit < best_fit:
                    best_fit, last_gain = child.fit, gen
                elif gen - last_gain >= self.cfg.restart_after:
                    keep = min(pop, key=lambda ind: ind.fit)
                    pop = [keep] + [self.random_individual() for _ in range(self.cfg.population - 1)]
                    last_gain = gen
            return None, gen
        except _Budget:
            return None, -1


def _to_family(ps: ParameterSet, xs: np.ndarray) -> SdsFamily:
    n = ps.N
    subsets = tuple(ResidueSubset(n, tuple(int(j) for j in np.flatnonzero(row))) for row in xs)
    return SdsFamily(n, subsets, ps.lam)


def stochastic_sds(ps: ParameterSet, cfg: SearchConfig | None = None,
                   progress: ProgressFn | None = None) -> SearchOutcome:
    """Look for one SDS with parameters `ps`; never claims nonexistence."""
    cfg = cfg or SearchConfig(mode=STOCHASTIC)
    if cfg.mode != STOCHASTIC:
        raise ValueError("stochastic_sds needs mode='stochastic'")
    if ps.N < 2 or not is_feasible(ps):
        raise InfeasibleParameters(f"{ps} fails the feasibility identities")
    t0 = time.monotonic()
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit
    stats = SearchStats()
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.islands)
    per_island = max(1, cfg.max_evaluations // cfg.islands)
    winner: tuple[int, int, np.ndarray] | None = None
    for idx, ss in enumerate(seeds):
        cap = winner[0] if winner else None
        if cap == 0:
            break
        island = _Island(ps, cfg, np.random.default_rng(ss), per_island, deadline, progress, stats)
        sol, gen = island.run(cap)
        if sol is not None:
            if winner is None or gen < winner[0]:
                winner = (gen, idx, sol.xs)
    stats.elapsed = time.monotonic() - t0
    if winner is None:
        return SearchOutcome(BUDGET_EXHAUSTED, [], stats, cfg, target=str(ps))
    fam = _to_family(ps, winner[2])
    if not verify_sds(fam).ok:
        raise VerificationError(f"stochastic search returned an invalid family for {ps}")
    stats.best_fitness = 0
    return SearchOutcome(FOUND, [fam], stats, cfg, target=str(ps))
